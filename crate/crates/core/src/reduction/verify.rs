use super::instance::{Instance, LP_TOLERANCE};
use super::project::project;
use crate::concentration::{atom_1d, atom_nd};
use crate::error::{Error, Result};
use crate::exactnum::{delta, lo_bound, ParityOffset, Rational};
use crate::norms::{lp_float, NormSpec};

/// Outcome of checking `P(Σ εᵢvᵢ = x) ≤ P(Σ εᵢaᵢ = t) ≤ bound` on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub p_exact: Rational,
    pub p_projected: Rational,
    pub bound: Rational,
    pub k: u64,
    pub delta: ParityOffset,
    /// `p_exact ≤ p_projected ≤ bound`.
    pub chain_holds: bool,
    /// `p_exact = bound`.
    pub tight: bool,
    pub perturbed: bool,
}

/// Runs the full chain on an exact-mode instance: exact atom probability,
/// projected one-dimensional atom probability, and the bound at `k = ⌈‖x‖⌉`.
pub fn verify_instance(instance: &Instance) -> Result<VerificationReport> {
    let projected = project(instance)?;
    let p_exact = atom_nd(instance.vectors(), instance.target())?;
    let p_projected = atom_1d(&projected.coefficients, &projected.target_value)?;
    let n = instance.n() as u64;
    let k = projected.k;
    let bound = lo_bound(n, k);
    let chain_holds = p_exact <= p_projected && p_projected <= bound;
    let tight = p_exact == bound;
    Ok(VerificationReport {
        p_exact,
        p_projected,
        bound,
        k,
        delta: delta(n, k),
        chain_holds,
        tight,
        perturbed: projected.perturbed,
    })
}

/// Sampling-path check for float-mode norms: no projection, only
/// `p_exact ≤ bound` with `k = ⌈‖x‖ − tolerance⌉`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatModeReport {
    pub p_exact: Rational,
    pub bound: Rational,
    pub k: u64,
    pub norm_estimate: f64,
    pub holds: bool,
}

pub fn verify_float_mode(instance: &Instance) -> Result<FloatModeReport> {
    let NormSpec::Lp(p) = instance.norm() else {
        return Err(Error::Unsupported("float-mode verification is for lp norms".into()));
    };
    let norm_estimate = lp_float(instance.target(), p.value());
    // rounding the ceiling down near integers only weakens the claim under test
    let k = libm::ceil(norm_estimate - LP_TOLERANCE).max(0.0) as u64;
    let p_exact = atom_nd(instance.vectors(), instance.target())?;
    let bound = lo_bound(instance.n() as u64, k);
    let holds = p_exact <= bound;
    Ok(FloatModeReport { p_exact, bound, k, norm_estimate, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::RVector;
    use alloc::vec;

    fn v(s: &str) -> RVector {
        s.parse().unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn extremal_three_vectors_are_tight() {
        let inst = Instance::new(vec![v("1,0"); 3], v("1,0"), NormSpec::L2).unwrap();
        let r = verify_instance(&inst).unwrap();
        assert_eq!((r.p_exact.clone(), r.p_projected.clone(), r.bound.clone()), (q("3/8"), q("3/8"), q("3/8")));
        assert!(r.tight && r.chain_holds);
        assert_eq!((r.k, r.delta.value()), (1, 0));
    }

    #[test]
    fn orthogonal_pair_at_corner_is_tight() {
        let inst = Instance::new(vec![v("1,0"), v("0,1")], v("1,1"), NormSpec::L2).unwrap();
        let r = verify_instance(&inst).unwrap();
        assert_eq!(r.p_exact, q("1/4"));
        assert_eq!(r.bound, q("1/4"));
        assert!(r.tight && r.chain_holds);
    }

    #[test]
    fn unreachable_origin() {
        let inst = Instance::new(vec![v("1,0"), v("0,1")], v("0,0"), NormSpec::L2).unwrap();
        let r = verify_instance(&inst).unwrap();
        assert_eq!(r.p_exact, q("0"));
        assert_eq!(r.bound, q("1/2"));
        assert!(r.chain_holds && !r.tight);
    }

    #[test]
    fn float_mode() {
        let lp = NormSpec::lp(q("3")).unwrap();
        let inst = Instance::new(vec![v("1,0"); 3], v("1,0"), lp).unwrap();
        let r = verify_float_mode(&inst).unwrap();
        assert_eq!(r.k, 1);
        assert_eq!(r.p_exact, q("3/8"));
        assert!(r.holds);
        let exact = Instance::new(vec![v("1,0")], v("1,0"), NormSpec::L1).unwrap();
        assert!(verify_float_mode(&exact).is_err());
        assert!(verify_instance(&inst).is_err());
    }
}
