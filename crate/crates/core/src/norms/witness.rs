use core::cmp::Ordering;

use num_bigint::BigInt;

use super::eval::{dual_eval, norm_eval, NormValue};
use super::spec::NormSpec;
use super::vector::RVector;
use crate::error::{Error, Result};
use crate::exactnum::{ceil_sqrt, floor_sqrt, Rational};

/// Exact positive normalizer `s` of a witness direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scale {
    Rational(Rational),
    /// `s = √value`; the payload is `s²`.
    SqrtRational(Rational),
}

impl Scale {
    pub fn squared(&self) -> Rational {
        match self {
            Scale::Rational(s) => s.square(),
            Scale::SqrtRational(sq) => sq.clone(),
        }
    }

    /// `|a| ≤ s`, decided exactly.
    pub fn bounds(&self, a: &Rational) -> bool {
        match self {
            Scale::Rational(s) => &a.abs() <= s,
            Scale::SqrtRational(sq) => &a.square() <= sq,
        }
    }

    /// `⌈t / s⌉`, decided exactly.
    pub fn ceil_ratio(&self, t: &Rational) -> BigInt {
        match self {
            Scale::Rational(s) => (t / s).ceil(),
            Scale::SqrtRational(sq) => {
                let ratio_sq = &t.square() / sq;
                if t.is_negative() {
                    -BigInt::from(floor_sqrt(&ratio_sq).expect("non-negative"))
                } else {
                    BigInt::from(ceil_sqrt(&ratio_sq).expect("non-negative"))
                }
            }
        }
    }

    /// `t / s == value`, decided exactly.
    pub fn ratio_equals(&self, t: &Rational, value: &NormValue) -> bool {
        match self {
            Scale::Rational(s) => NormValue::Exact(t / s).exact_eq(value).unwrap_or(false),
            Scale::SqrtRational(sq) => {
                !t.is_negative()
                    && NormValue::Squared(&t.square() / sq).exact_eq(value).unwrap_or(false)
            }
        }
    }
}

/// Dual-optimal direction `y = w / s` with `‖y‖_* ≤ 1` and `⟨x, y⟩ = ‖x‖`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub direction: RVector,
    pub scale: Scale,
}

impl Witness {
    /// `y = w / s` when the scale is rational.
    pub fn normalized(&self) -> Option<RVector> {
        match &self.scale {
            Scale::Rational(s) => Some(self.direction.scale(&s.recip().ok()?)),
            Scale::SqrtRational(_) => None,
        }
    }
}

fn sign_or_plus(v: &Rational) -> Rational {
    if v.is_negative() {
        Rational::from(-1)
    } else {
        Rational::one()
    }
}

/// Witness attaining `sup{⟨x, u⟩ : ‖u‖_* ≤ 1} = ‖x‖`.
///
/// Ties are broken toward the smallest index so reports are reproducible.
pub fn dual_witness(spec: &NormSpec, x: &RVector) -> Result<Witness> {
    spec.require_exact("dual_witness")?;
    spec.check_dim(x)?;
    if x.is_zero() {
        return Err(Error::InvalidInput("dual witness of the zero vector".into()));
    }
    let unit = Scale::Rational(Rational::one());
    let witness = match spec {
        NormSpec::L2 => Witness { direction: x.clone(), scale: Scale::SqrtRational(x.norm_sq()) },
        NormSpec::L1 => Witness {
            direction: RVector::new(x.iter().map(sign_or_plus).collect())?,
            scale: unit,
        },
        NormSpec::Linf => {
            let mut best = 0;
            for i in 1..x.dim() {
                if x[i].abs() > x[best].abs() {
                    best = i;
                }
            }
            let direction = RVector::basis(x.dim(), best).scale(&sign_or_plus(&x[best]));
            Witness { direction, scale: unit }
        }
        NormSpec::MaxFunctional(fs) => {
            let mut best: Option<(usize, Rational)> = None;
            for (j, f) in fs.as_slice().iter().enumerate() {
                let v = f.dot(x)?;
                if best.as_ref().is_none_or(|(_, b)| v.abs() > b.abs()) {
                    best = Some((j, v));
                }
            }
            let (j, v) = best.expect("at least one functional");
            Witness { direction: fs.as_slice()[j].scale(&sign_or_plus(&v)), scale: unit }
        }
        NormSpec::Lp(_) => unreachable!("rejected by require_exact"),
    };
    Ok(witness)
}

/// Structural certificate that `y = w / s` lies in the dual unit ball.
///
/// Closed-form duals are evaluated exactly; for a facet-form norm the
/// direction must be `±f_j` with `s = 1`, since `⟨f_j, x⟩ ≤ ‖x‖` for all `x`.
pub fn certify_dual_membership(spec: &NormSpec, witness: &Witness) -> Result<bool> {
    match spec {
        NormSpec::MaxFunctional(fs) => {
            if witness.scale != Scale::Rational(Rational::one()) {
                return Ok(false);
            }
            let w = &witness.direction;
            Ok(fs.as_slice().iter().any(|f| f == w || &f.neg() == w))
        }
        _ => {
            let value = dual_eval(spec, &witness.direction)?;
            // ‖w‖_* ≤ s  ⇔  ‖w‖_*² ≤ s²
            Ok(match (value, &witness.scale) {
                (NormValue::Exact(v), Scale::Rational(s)) => &v <= s,
                (NormValue::Exact(v), Scale::SqrtRational(sq)) => &v.square() <= sq,
                (NormValue::Squared(vsq), scale) => vsq <= scale.squared(),
                (NormValue::Float(_), _) => false,
            })
        }
    }
}

fn closed_form_only(spec: &NormSpec, what: &str) -> Result<()> {
    match spec {
        NormSpec::L1 | NormSpec::L2 | NormSpec::Linf => Ok(()),
        _ => Err(Error::Unsupported(alloc::format!("{} needs l1, l2 or linf, got {}", what, spec))),
    }
}

/// `|⟨x, u⟩| ≤ ‖x‖·‖u‖_*`, compared exactly.
pub fn holder_check(spec: &NormSpec, x: &RVector, u: &RVector) -> Result<bool> {
    closed_form_only(spec, "holder_check")?;
    let inner = x.dot(u)?;
    let nx = norm_eval(spec, x)?;
    let nu = dual_eval(spec, u)?;
    Ok(match (nx, nu) {
        (NormValue::Exact(a), NormValue::Exact(b)) => inner.abs() <= &a * &b,
        (NormValue::Squared(a), NormValue::Squared(b)) => inner.square() <= &a * &b,
        _ => unreachable!("closed-form duals pair exact with exact and squared with squared"),
    })
}

/// `‖x‖ = ‖x‖_{**}`, checked two ways: the closed-form bidual reproduces the
/// norm value, and the supremum defining the bidual is attained by the dual
/// witness (`⟨x, y⟩ = ‖x‖` with `‖y‖_* ≤ 1`).
pub fn double_dual_check(spec: &NormSpec, x: &RVector) -> Result<bool> {
    closed_form_only(spec, "double_dual_check")?;
    let primal = norm_eval(spec, x)?;
    let dual = spec.dual().expect("closed-form dual");
    let bidual = dual_eval(&dual, x)?;
    if primal.exact_eq(&bidual) != Some(true) {
        return Ok(false);
    }
    if x.is_zero() {
        return Ok(primal.cmp_rational(&Rational::zero()) == Some(Ordering::Equal));
    }
    let witness = dual_witness(spec, x)?;
    let attained = witness.scale.ratio_equals(&x.dot(&witness.direction)?, &primal);
    Ok(attained && certify_dual_membership(spec, &witness)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn poly() -> NormSpec {
        NormSpec::max_functional(vec![RVector::from_ints(&[1, 0]), RVector::from_ints(&[1, 1])]).unwrap()
    }

    #[test]
    fn witness_examples() {
        let w = dual_witness(&NormSpec::L2, &RVector::from_ints(&[3, 4])).unwrap();
        assert_eq!(w.direction, RVector::from_ints(&[3, 4]));
        assert_eq!(w.scale, Scale::SqrtRational(Rational::from(25)));
        assert!(w.scale.ratio_equals(&Rational::from(25), &NormValue::Exact(Rational::from(5))));

        let x = RVector::from_ints(&[3, -4]);
        let w = dual_witness(&NormSpec::L1, &x).unwrap();
        assert_eq!(w.direction, RVector::from_ints(&[1, -1]));
        assert_eq!(x.dot(&w.direction).unwrap(), Rational::from(7));

        let x = RVector::from_ints(&[2, -3]);
        let w = dual_witness(&poly(), &x).unwrap();
        assert_eq!(w.direction, RVector::from_ints(&[1, 0]));
        assert_eq!(x.dot(&w.direction).unwrap(), Rational::from(2));
        assert!(certify_dual_membership(&poly(), &w).unwrap());
    }

    #[test]
    fn witness_tie_breaks_and_signs() {
        let w = dual_witness(&NormSpec::Linf, &RVector::from_ints(&[-5, 0, 5])).unwrap();
        assert_eq!(w.direction, RVector::from_ints(&[-1, 0, 0]));
        let w = dual_witness(&NormSpec::L1, &RVector::from_ints(&[0, -2])).unwrap();
        assert_eq!(w.direction, RVector::from_ints(&[1, -1]));
        let w = dual_witness(&poly(), &RVector::from_ints(&[-1, 0])).unwrap();
        assert_eq!(w.direction, RVector::from_ints(&[-1, 0]));
    }

    #[test]
    fn witness_rejects_zero_and_float() {
        assert!(dual_witness(&NormSpec::L1, &RVector::zeros(2)).is_err());
        let lp = NormSpec::lp(Rational::from(3)).unwrap();
        assert!(matches!(dual_witness(&lp, &RVector::from_ints(&[1])), Err(Error::Unsupported(_))));
    }

    #[test]
    fn holder_examples() {
        let e1 = RVector::from_ints(&[1, 0]);
        let e2 = RVector::from_ints(&[0, 1]);
        assert!(holder_check(&NormSpec::L2, &e1, &e2).unwrap());
        assert!(holder_check(&NormSpec::L1, &RVector::from_ints(&[3, -4]), &RVector::from_ints(&[1, -1])).unwrap());
        assert!(holder_check(&NormSpec::L2, &RVector::from_ints(&[1, 2]), &RVector::from_ints(&[2, 1])).unwrap());
        assert!(holder_check(&poly(), &e1, &e2).is_err());
    }

    #[test]
    fn double_dual_examples() {
        assert!(double_dual_check(&NormSpec::L1, &RVector::from_ints(&[3, -4])).unwrap());
        assert!(double_dual_check(&NormSpec::L2, &RVector::from_ints(&[3, 4])).unwrap());
        assert!(double_dual_check(&NormSpec::Linf, &RVector::from_ints(&[5, 0, -5])).unwrap());
        assert!(double_dual_check(&NormSpec::Linf, &RVector::zeros(2)).unwrap());
        assert!(double_dual_check(&poly(), &RVector::from_ints(&[1, 1])).is_err());
    }

    #[test]
    fn scale_ceil_ratio() {
        let s = Scale::SqrtRational(Rational::from(2));
        // 2 / sqrt(2) = sqrt(2)
        assert_eq!(s.ceil_ratio(&Rational::from(2)), BigInt::from(2));
        assert_eq!(s.ceil_ratio(&Rational::from(-2)), BigInt::from(-1));
        assert_eq!(s.ceil_ratio(&Rational::zero()), BigInt::from(0));
        let r = Scale::Rational(Rational::ratio(1, 2));
        assert_eq!(r.ceil_ratio(&Rational::ratio(7, 16)), BigInt::from(1));
        assert!(s.bounds(&Rational::ratio(7, 5)));
        assert!(!s.bounds(&Rational::ratio(3, 2)));
    }
}
