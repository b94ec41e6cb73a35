use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::norms::{norm_eval, NormSpec, NormValue, RVector};

/// Slack allowed on float-mode (ℓp) unit-ball checks and norm ceilings.
pub const LP_TOLERANCE: f64 = 1e-9;

/// `n` nonzero vectors with `‖vᵢ‖ ≤ 1`, a target `x`, and the norm.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    vectors: Vec<RVector>,
    target: RVector,
    norm: NormSpec,
}

impl Instance {
    /// Validates the hypotheses: every vector nonzero and in the unit ball
    /// (exactly for exact-mode norms), all dimensions equal.
    pub fn new(vectors: Vec<RVector>, target: RVector, norm: NormSpec) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Empty("instance needs at least one vector"));
        }
        let dim = target.dim();
        norm.check_dim(&target)?;
        for (i, v) in vectors.iter().enumerate() {
            v.check_dim(dim)?;
            if v.is_zero() {
                return Err(Error::InvalidInput(format!("vector {} is zero", i)));
            }
            let inside = match norm_eval(&norm, v)? {
                NormValue::Float(f) => f <= 1.0 + LP_TOLERANCE,
                exact => exact.cmp_rational(&Rational::one()) != Some(Ordering::Greater),
            };
            if !inside {
                return Err(Error::InvalidInput(format!("vector {} = {} has norm above 1 under {}", i, v, norm)));
            }
        }
        Ok(Instance { vectors, target, norm })
    }

    pub fn vectors(&self) -> &[RVector] {
        &self.vectors
    }

    pub fn target(&self) -> &RVector {
        &self.target
    }

    pub fn norm(&self) -> &NormSpec {
        &self.norm
    }

    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn dim(&self) -> usize {
        self.target.dim()
    }

    /// Same vectors and norm, different target.
    pub fn with_target(&self, target: RVector) -> Result<Self> {
        target.check_dim(self.dim())?;
        Ok(Instance { vectors: self.vectors.clone(), target, norm: self.norm.clone() })
    }
}
