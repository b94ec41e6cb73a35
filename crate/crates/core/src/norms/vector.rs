use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// A vector in `Qᵈ` with `d ≥ 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RVector(Vec<Rational>);

impl RVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Empty("vector must have dimension at least 1"));
        }
        Ok(RVector(coords))
    }

    /// Integer coordinates; panics on an empty slice.
    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| Rational::from(c)).collect()).expect("non-empty")
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        RVector(alloc::vec![Rational::zero(); dim])
    }

    /// The standard basis vector `e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch { expected, found: self.dim() });
        }
        Ok(())
    }

    pub fn dot(&self, other: &RVector) -> Result<Rational> {
        other.check_dim(self.dim())?;
        Ok(self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum())
    }

    /// Squared Euclidean length `⟨x, x⟩`.
    pub fn norm_sq(&self) -> Rational {
        self.0.iter().map(Rational::square).sum()
    }

    pub fn scale(&self, factor: &Rational) -> RVector {
        RVector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &RVector) -> Result<RVector> {
        other.check_dim(self.dim())?;
        Ok(RVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn neg(&self) -> RVector {
        RVector(self.0.iter().map(|c| -c).collect())
    }

    /// Parses a comma-separated list of rationals, e.g. `1/2,-1,0`.
    pub fn parse_list(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|c| c.trim().parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }

    /// Comma-separated form accepted by [`RVector::parse_list`].
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|c| format!("{}", c)).collect();
        parts.join(",")
    }
}

impl Index<usize> for RVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_list_string())
    }
}

impl fmt::Debug for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RVector {
    type Err = Error;
    /// Accepts `a,b,c` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        Self::parse_list(t)
    }
}

/// Rank of a list of vectors over `Q`, by exact Gaussian elimination.
pub fn rank(vectors: &[RVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.dim();
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.0.clone()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip().expect("pivot is nonzero");
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (c, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *c = &*c - &(&factor * p);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
