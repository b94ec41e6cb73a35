use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::vector::{rank, RVector};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Facet-form polyhedral norm `‖x‖ = max_j |⟨f_j, x⟩|`.
///
/// The functionals must span `Qᵈ`; a rank-deficient family is only a
/// seminorm and is rejected.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Functionals(Vec<RVector>);

impl Functionals {
    pub fn new(functionals: Vec<RVector>) -> Result<Self> {
        let first = functionals
            .first()
            .ok_or(Error::Empty("polyhedral norm needs at least one functional"))?;
        let dim = first.dim();
        for f in &functionals {
            f.check_dim(dim)?;
        }
        let r = rank(&functionals);
        if r < dim {
            return Err(Error::InvalidInput(format!(
                "functionals have rank {} < dimension {}; this is a seminorm",
                r, dim
            )));
        }
        Ok(Functionals(functionals))
    }

    pub fn dim(&self) -> usize {
        self.0[0].dim()
    }

    pub fn as_slice(&self) -> &[RVector] {
        &self.0
    }
}

/// Exponent `p > 1` of a float-mode ℓp norm.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LpExponent(Rational);

impl LpExponent {
    pub fn new(p: Rational) -> Result<Self> {
        if p <= Rational::one() {
            return Err(Error::InvalidInput(format!("lp exponent must exceed 1, got {}", p)));
        }
        Ok(LpExponent(p))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// Conjugate exponent `q = p / (p - 1)`.
    pub fn conjugate(&self) -> LpExponent {
        let q = &self.0 / &(&self.0 - &Rational::one());
        LpExponent(q)
    }
}

/// A norm on `Qᵈ`.
///
/// Textual form: `l1`, `l2`, `linf`, `lp:<p>` or `poly:[f1;f2;...]` where
/// each `fⱼ` is a comma-separated rational vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum NormSpec {
    L1,
    L2,
    Linf,
    MaxFunctional(Functionals),
    /// Float-mode only: never used for exact certification.
    Lp(LpExponent),
}

impl NormSpec {
    pub fn max_functional(functionals: Vec<RVector>) -> Result<Self> {
        Functionals::new(functionals).map(NormSpec::MaxFunctional)
    }

    pub fn lp(p: Rational) -> Result<Self> {
        LpExponent::new(p).map(NormSpec::Lp)
    }

    /// True for every variant whose values and ceilings are exact.
    pub fn is_exact(&self) -> bool {
        !matches!(self, NormSpec::Lp(_))
    }

    /// Fixed dimension, if the norm carries one.
    pub fn dim(&self) -> Option<usize> {
        match self {
            NormSpec::MaxFunctional(f) => Some(f.dim()),
            _ => None,
        }
    }

    pub fn check_dim(&self, x: &RVector) -> Result<()> {
        match self.dim() {
            Some(d) => x.check_dim(d),
            None => Ok(()),
        }
    }

    /// Closed-form dual, when one exists among the supported variants.
    pub fn dual(&self) -> Option<NormSpec> {
        match self {
            NormSpec::L1 => Some(NormSpec::Linf),
            NormSpec::L2 => Some(NormSpec::L2),
            NormSpec::Linf => Some(NormSpec::L1),
            NormSpec::Lp(p) => Some(NormSpec::Lp(p.conjugate())),
            NormSpec::MaxFunctional(_) => None,
        }
    }

    pub(crate) fn require_exact(&self, what: &str) -> Result<()> {
        if self.is_exact() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!("{} needs an exact-mode norm, got {}", what, self)))
        }
    }
}

impl fmt::Display for NormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormSpec::L1 => f.write_str("l1"),
            NormSpec::L2 => f.write_str("l2"),
            NormSpec::Linf => f.write_str("linf"),
            NormSpec::Lp(p) => write!(f, "lp:{}", p.value()),
            NormSpec::MaxFunctional(fs) => {
                let parts: Vec<String> = fs.as_slice().iter().map(RVector::to_list_string).collect();
                write!(f, "poly:[{}]", parts.join(";"))
            }
        }
    }
}

impl FromStr for NormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "l1" => return Ok(NormSpec::L1),
            "l2" => return Ok(NormSpec::L2),
            "linf" => return Ok(NormSpec::Linf),
            _ => {}
        }
        if let Some(p) = t.strip_prefix("lp:") {
            return NormSpec::lp(p.trim().parse()?);
        }
        if let Some(body) = t.strip_prefix("poly:") {
            let inner = body
                .trim()
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("poly norm needs [f1;f2;...], got {:?}", s)))?;
            let functionals = inner
                .split(';')
                .map(RVector::parse_list)
                .collect::<Result<Vec<_>>>()?;
            return NormSpec::max_functional(functionals);
        }
        Err(Error::Parse(format!("unknown norm {:?}", s)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn textual_forms() {
        for s in ["l1", "l2", "linf", "lp:3/2", "poly:[1,0;1,1]", "poly:[1,0,0;0,1,0;0,0,1;2/3,2/3,0]"] {
            let spec: NormSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        let spaced: NormSpec = " poly:[ 1 , 0 ; 0, 1 ] ".parse().unwrap();
        assert_eq!(spaced.to_string(), "poly:[1,0;0,1]");
    }

    #[test]
    fn rejects_bad_norms() {
        assert!("l3".parse::<NormSpec>().is_err());
        assert!("lp:1".parse::<NormSpec>().is_err());
        assert!("lp:1/2".parse::<NormSpec>().is_err());
        assert!("poly:[]".parse::<NormSpec>().is_err());
        assert!("poly:[1,0;0,1,2]".parse::<NormSpec>().is_err());
        // rank 1 in dimension 2
        let err = "poly:[1,1;2,2]".parse::<NormSpec>().unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn duals() {
        assert_eq!(NormSpec::L1.dual(), Some(NormSpec::Linf));
        assert_eq!(NormSpec::Linf.dual(), Some(NormSpec::L1));
        assert_eq!(NormSpec::L2.dual(), Some(NormSpec::L2));
        let p = NormSpec::lp(Rational::from(3)).unwrap();
        assert_eq!(p.dual(), Some(NormSpec::lp(Rational::ratio(3, 2)).unwrap()));
        let poly = NormSpec::max_functional(vec![RVector::from_ints(&[1, 0]), RVector::from_ints(&[0, 1])]).unwrap();
        assert_eq!(poly.dual(), None);
    }
}
