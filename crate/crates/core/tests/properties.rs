//! Invariants as property tests.

use std::cmp::Ordering;

use littlewood_core::norms::{certify_dual_membership, rank, NormValue};
use littlewood_core::{
    atom_1d, ceil_norm, double_dual_check, dual_witness, holder_check, lo_bound, norm_eval, project,
    verify_instance, Instance, NormSpec, RVector, Rational,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational(den: i64) -> impl Strategy<Value = Rational> {
    (-3 * den..=3 * den).prop_map(move |p| Rational::ratio(p, den))
}

fn vector(dim: usize) -> impl Strategy<Value = RVector> {
    (1i64..=6)
        .prop_flat_map(move |den| proptest::collection::vec(rational(den), dim))
        .prop_map(|c| RVector::new(c).unwrap())
}

fn closed_form_norm() -> impl Strategy<Value = NormSpec> {
    prop_oneof![Just(NormSpec::L1), Just(NormSpec::L2), Just(NormSpec::Linf)]
}

fn exact_norm() -> impl Strategy<Value = NormSpec> {
    prop_oneof![
        Just(NormSpec::L1),
        Just(NormSpec::L2),
        Just(NormSpec::Linf),
        Just("poly:[1,0;0,1;2/3,2/3]".parse().unwrap()),
        Just("poly:[1,0;1/2,1;-1/2,1]".parse().unwrap()),
    ]
}

/// Nonzero vector scaled into the unit ball of `norm` (exactly).
fn into_ball(norm: &NormSpec, v: &RVector) -> RVector {
    let value = norm_eval(norm, v).unwrap();
    if value.cmp_rational(&Rational::one()) != Some(Ordering::Greater) {
        return v.clone();
    }
    let bound = match value {
        NormValue::Exact(r) => r,
        NormValue::Squared(sq) => Rational::from(BigInt::from(littlewood_core::ceil_sqrt(&sq).unwrap())),
        NormValue::Float(_) => unreachable!(),
    };
    v.scale(&bound.recip().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rational_text_roundtrip(r in rational(7)) {
        let text = r.to_string();
        prop_assert_eq!(text.parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn holder_and_bidual(spec in closed_form_norm(), x in vector(3), u in vector(3)) {
        prop_assert!(holder_check(&spec, &x, &u).unwrap());
        prop_assert!(double_dual_check(&spec, &x).unwrap());
    }

    #[test]
    fn witness_attains_the_norm(spec in exact_norm(), x in vector(2)) {
        prop_assume!(!x.is_zero());
        let w = dual_witness(&spec, &x).unwrap();
        let t = x.dot(&w.direction).unwrap();
        prop_assert!(w.scale.ratio_equals(&t, &norm_eval(&spec, &x).unwrap()));
        prop_assert!(certify_dual_membership(&spec, &w).unwrap());
    }

    #[test]
    fn ceil_norm_brackets_the_norm(spec in exact_norm(), x in vector(2)) {
        let k = BigInt::from(ceil_norm(&spec, &x).unwrap());
        let value = norm_eval(&spec, &x).unwrap();
        if x.is_zero() {
            prop_assert_eq!(k, BigInt::from(0));
        } else {
            let hi = Rational::from(k.clone());
            let lo = Rational::from(k - 1);
            prop_assert_eq!(value.cmp_rational(&lo), Some(Ordering::Greater));
            prop_assert_ne!(value.cmp_rational(&hi), Some(Ordering::Greater));
        }
    }

    #[test]
    fn seminorm_guard_matches_rank(fs in proptest::collection::vec(vector(3), 1..5)) {
        let r = rank(&fs);
        let built = NormSpec::max_functional(fs);
        prop_assert_eq!(built.is_ok(), r == 3);
    }

    #[test]
    fn chain_and_projection_invariants(
        spec in exact_norm(),
        raw in proptest::collection::vec(vector(2), 1..6),
        pick in any::<u64>(),
        use_sum in any::<bool>(),
        other in vector(2),
    ) {
        let vectors: Vec<RVector> = raw.iter().filter(|v| !v.is_zero()).map(|v| into_ball(&spec, v)).collect();
        prop_assume!(!vectors.is_empty());
        let target = if use_sum {
            littlewood_core::SignPattern::new(pick, vectors.len() as u32).apply(&vectors).unwrap()
        } else {
            other
        };
        let inst = Instance::new(vectors, target.clone(), spec.clone()).unwrap();
        let p = project(&inst).unwrap();
        prop_assert_eq!(BigInt::from(p.k), BigInt::from(ceil_norm(&spec, &target).unwrap()));
        for a in &p.coefficients {
            prop_assert!(!a.is_zero());
            prop_assert!(p.scale.bounds(a));
        }
        // the equality event is invariant under positive rescaling of w
        let c = Rational::ratio(3, 7);
        let scaled: Vec<Rational> = p.coefficients.iter().map(|a| a * &c).collect();
        prop_assert_eq!(
            atom_1d(&scaled, &(&p.target_value * &c)).unwrap(),
            atom_1d(&p.coefficients, &p.target_value).unwrap()
        );
        let r = verify_instance(&inst).unwrap();
        prop_assert!(r.chain_holds, "{:?} on {:?}", r, inst);
        prop_assert_eq!(r.bound, lo_bound(inst.n() as u64, r.k));
    }
}
