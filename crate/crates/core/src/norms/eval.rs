use core::cmp::Ordering;

use num_bigint::BigUint;

use super::spec::NormSpec;
use super::vector::RVector;
use crate::error::{Error, Result};
use crate::exactnum::{ceil_sqrt, Rational};

/// Value of a norm, in the most exact form available for the variant.
#[derive(Clone, Debug, PartialEq)]
pub enum NormValue {
    Exact(Rational),
    /// The square of the value, e.g. `⟨x, x⟩` for ℓ2.
    Squared(Rational),
    Float(f64),
}

impl NormValue {
    /// Exact comparison `self <=> r`; `None` for float values.
    pub fn cmp_rational(&self, r: &Rational) -> Option<Ordering> {
        match self {
            NormValue::Exact(v) => Some(v.cmp(r)),
            NormValue::Squared(sq) => {
                if r.is_negative() {
                    Some(Ordering::Greater)
                } else {
                    Some(sq.cmp(&r.square()))
                }
            }
            NormValue::Float(_) => None,
        }
    }

    /// Exact equality of two values; `None` if either is a float.
    pub fn exact_eq(&self, other: &NormValue) -> Option<bool> {
        match (self, other) {
            (NormValue::Exact(a), NormValue::Exact(b)) => Some(a == b),
            (NormValue::Squared(a), NormValue::Squared(b)) => Some(a == b),
            (NormValue::Exact(a), NormValue::Squared(s)) | (NormValue::Squared(s), NormValue::Exact(a)) => {
                Some(!a.is_negative() && &a.square() == s)
            }
            _ => None,
        }
    }

    /// `⌈value⌉` for exact values.
    pub fn ceil(&self) -> Option<BigUint> {
        match self {
            NormValue::Exact(v) => Some(v.ceil().to_biguint().unwrap_or_default()),
            NormValue::Squared(sq) => ceil_sqrt(sq).ok(),
            NormValue::Float(_) => None,
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            NormValue::Exact(v) => v.to_f64(),
            NormValue::Squared(sq) => libm::sqrt(sq.to_f64()),
            NormValue::Float(f) => *f,
        }
    }
}

fn max_abs<'a>(values: impl Iterator<Item = &'a Rational>) -> Rational {
    values.map(Rational::abs).max().unwrap_or_else(Rational::zero)
}

/// `(Σ |xᵢ|^p)^(1/p)`, scaled by the largest magnitude to stay in range.
pub(crate) fn lp_float(x: &RVector, p: &Rational) -> f64 {
    let p = p.to_f64();
    let mags: alloc::vec::Vec<f64> = x.iter().map(|c| libm::fabs(c.to_f64())).collect();
    let m = mags.iter().cloned().fold(0.0, f64::max);
    if m == 0.0 {
        return 0.0;
    }
    let sum: f64 = mags.iter().map(|&a| libm::pow(a / m, p)).sum();
    m * libm::pow(sum, 1.0 / p)
}

/// `‖x‖` under `spec`.
pub fn norm_eval(spec: &NormSpec, x: &RVector) -> Result<NormValue> {
    spec.check_dim(x)?;
    Ok(match spec {
        NormSpec::L1 => NormValue::Exact(x.iter().map(Rational::abs).sum()),
        NormSpec::L2 => NormValue::Squared(x.norm_sq()),
        NormSpec::Linf => NormValue::Exact(max_abs(x.iter())),
        NormSpec::MaxFunctional(fs) => {
            let mut best = Rational::zero();
            for f in fs.as_slice() {
                let v = f.dot(x)?.abs();
                if v > best {
                    best = v;
                }
            }
            NormValue::Exact(best)
        }
        NormSpec::Lp(p) => NormValue::Float(lp_float(x, p.value())),
    })
}

/// `⌈‖x‖⌉`, exact; zero iff `x = 0`.
pub fn ceil_norm(spec: &NormSpec, x: &RVector) -> Result<BigUint> {
    spec.require_exact("ceil_norm")?;
    let value = norm_eval(spec, x)?;
    Ok(value.ceil().expect("exact norm value"))
}

/// `‖u‖_* = sup{⟨u, x⟩ : ‖x‖ ≤ 1}` for the variants with a closed-form dual.
pub fn dual_eval(spec: &NormSpec, u: &RVector) -> Result<NormValue> {
    match spec.dual() {
        Some(dual) => norm_eval(&dual, u),
        None => Err(Error::Unsupported(
            "dual norm of a facet-form polyhedral norm needs a gauge linear program".into(),
        )),
    }
}

/// `⌈‖x‖⌉` as a machine integer.
pub(crate) fn ceil_norm_u64(spec: &NormSpec, x: &RVector) -> Result<u64> {
    let k = ceil_norm(spec, x)?;
    u64::try_from(&k).map_err(|_| Error::InvalidInput(alloc::format!("target norm ceiling {} out of range", k)))
}
