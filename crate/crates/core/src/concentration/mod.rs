//! Exact atom probabilities `P(Σ εᵢvᵢ = x)` by exhaustive enumeration.
//!
//! Small families are walked directly; larger ones use meet-in-the-middle
//! over two half tables. Sums are keyed by exact lattice coordinates, so the
//! event is exact equality with no tolerance.

mod lattice;
mod walk;

use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigInt;

use self::lattice::{unscale, Coord, Lattice, Points};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::norms::RVector;

/// Largest `n` enumerated pattern by pattern (and the limit for full sum tables).
pub const NAIVE_LIMIT: usize = 24;
/// Largest `n` handled by meet-in-the-middle.
pub const MITM_LIMIT: usize = 44;

/// Enumeration strategy for atom probabilities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Naive up to [`NAIVE_LIMIT`], meet-in-the-middle up to [`MITM_LIMIT`].
    #[default]
    Auto,
    Naive,
    MeetInTheMiddle,
}

/// One assignment of signs: bit `i` set means `εᵢ = +1`, clear means `εᵢ = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern {
    bits: u64,
    len: u32,
}

impl SignPattern {
    pub fn new(bits: u64, len: u32) -> Self {
        assert!(len < 64, "at most 63 signs");
        SignPattern { bits: bits & ((1u64 << len) - 1), len }
    }

    /// All `2ⁿ` patterns in increasing bit order.
    pub fn all(len: u32) -> impl Iterator<Item = SignPattern> {
        assert!(len < 64, "at most 63 signs");
        (0..(1u64 << len)).map(move |bits| SignPattern { bits, len })
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn sign(&self, i: u32) -> i8 {
        if self.bits >> i & 1 == 1 {
            1
        } else {
            -1
        }
    }

    /// `Σ εᵢvᵢ` computed directly in rationals.
    pub fn apply(&self, vectors: &[RVector]) -> Result<RVector> {
        let first = vectors.first().ok_or(Error::Empty("no vectors"))?;
        let mut sum = RVector::zeros(first.dim());
        for (i, v) in vectors.iter().enumerate() {
            let term = if self.sign(i as u32) > 0 { v.clone() } else { v.neg() };
            sum = sum.add(&term)?;
        }
        Ok(sum)
    }
}

fn check_family(vectors: &[RVector]) -> Result<usize> {
    let first = vectors.first().ok_or(Error::Empty("at least one vector is required"))?;
    let dim = first.dim();
    for v in vectors {
        v.check_dim(dim)?;
    }
    Ok(dim)
}

enum Counts {
    Small(HashMap<Vec<i64>, u64>),
    Big(HashMap<Vec<BigInt>, u64>),
}

/// Occurrence count of every exact sum `Σ εᵢvᵢ` over a set of sign patterns.
///
/// Tables built from disjoint pattern ranges of the same family merge by
/// count addition, which is associative and commutative.
pub struct SumTable {
    scale: BigInt,
    dim: usize,
    counts: Counts,
}

impl SumTable {
    /// Table over all `2ⁿ` patterns.
    pub fn build(vectors: &[RVector]) -> Result<SumTable> {
        Self::build_partition(vectors, 0, 0)
    }

    /// Table over the patterns whose last `fixed` signs are given by `prefix`
    /// (bit `j` of `prefix` is the sign of vector `n - fixed + j`).
    pub fn build_partition(vectors: &[RVector], fixed: u32, prefix: u64) -> Result<SumTable> {
        let dim = check_family(vectors)?;
        let n = vectors.len();
        if n > NAIVE_LIMIT {
            return Err(Error::Capacity { n, limit: NAIVE_LIMIT, what: "full sum tables" });
        }
        if fixed as usize > n {
            return Err(Error::InvalidInput(alloc::format!("cannot fix {} of {} signs", fixed, n)));
        }
        let (lattice, scale) = Lattice::new(vectors, None);
        let counts = match lattice {
            Lattice::Small(p) => Counts::Small(tabulate_partition(&p.vectors, fixed, prefix)),
            Lattice::Big(p) => Counts::Big(tabulate_partition(&p.vectors, fixed, prefix)),
        };
        Ok(SumTable { scale, dim, counts })
    }

    pub fn merge(&mut self, other: SumTable) -> Result<()> {
        if other.scale != self.scale || other.dim != self.dim {
            return Err(Error::InvalidInput("sum tables come from different families".into()));
        }
        match (&mut self.counts, other.counts) {
            (Counts::Small(a), Counts::Small(b)) => merge_counts(a, b),
            (Counts::Big(a), Counts::Big(b)) => merge_counts(a, b),
            _ => return Err(Error::InvalidInput("sum tables use different representations".into())),
        }
        Ok(())
    }

    /// Number of distinct sums.
    pub fn len(&self) -> usize {
        match &self.counts {
            Counts::Small(m) => m.len(),
            Counts::Big(m) => m.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of patterns tabulated.
    pub fn total(&self) -> u64 {
        match &self.counts {
            Counts::Small(m) => m.values().sum(),
            Counts::Big(m) => m.values().sum(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Count of patterns summing exactly to `x` (zero if `x` is off the lattice).
    pub fn count(&self, x: &RVector) -> u64 {
        if x.dim() != self.dim {
            return 0;
        }
        let scaled: Option<Vec<BigInt>> = x
            .iter()
            .map(|c| {
                let s = c * &Rational::from(self.scale.clone());
                s.is_integer().then(|| s.numer().clone())
            })
            .collect();
        let Some(key) = scaled else { return 0 };
        match &self.counts {
            Counts::Small(m) => {
                let small: Option<Vec<i64>> = key.iter().map(num_traits::ToPrimitive::to_i64).collect();
                small.and_then(|k| m.get(&k).copied()).unwrap_or(0)
            }
            Counts::Big(m) => m.get(&key).copied().unwrap_or(0),
        }
    }

    /// All `(sum, count)` pairs in lexicographic order of the sum.
    pub fn entries(&self) -> Vec<(RVector, u64)> {
        match &self.counts {
            Counts::Small(m) => sorted_entries(m, &self.scale),
            Counts::Big(m) => sorted_entries(m, &self.scale),
        }
    }

    /// Most frequent sum, lexicographically smallest among ties.
    pub fn argmax(&self) -> Option<(RVector, u64)> {
        match &self.counts {
            Counts::Small(m) => argmax_counts(m, &self.scale),
            Counts::Big(m) => argmax_counts(m, &self.scale),
        }
    }
}

fn tabulate_partition<C: Coord>(vectors: &[Vec<C>], fixed: u32, prefix: u64) -> HashMap<Vec<C>, u64> {
    let free = vectors.len() - fixed as usize;
    let dim = vectors[0].len();
    let mut offset = alloc::vec![C::zero(); dim];
    for (j, v) in vectors[free..].iter().enumerate() {
        for (o, c) in offset.iter_mut().zip(v) {
            if prefix >> j & 1 == 1 {
                o.add_assign(c);
            } else {
                o.sub_assign(c);
            }
        }
    }
    walk::tabulate(&vectors[..free], &offset)
}

fn merge_counts<C: Coord>(into: &mut HashMap<Vec<C>, u64>, from: HashMap<Vec<C>, u64>) {
    for (k, c) in from {
        *into.entry(k).or_insert(0) += c;
    }
}

fn sorted_entries<C: Coord + Into<BigInt>>(m: &HashMap<Vec<C>, u64>, scale: &BigInt) -> Vec<(RVector, u64)> {
    let mut keys: Vec<(&Vec<C>, u64)> = m.iter().map(|(k, c)| (k, *c)).collect();
    keys.sort();
    keys.into_iter().map(|(k, c)| (unscale(k, scale), c)).collect()
}

fn argmax_counts<C: Coord + Into<BigInt>>(m: &HashMap<Vec<C>, u64>, scale: &BigInt) -> Option<(RVector, u64)> {
    let mut best: Option<(&Vec<C>, u64)> = None;
    for (k, &c) in m {
        let better = match best {
            None => true,
            Some((bk, bc)) => c > bc || (c == bc && k < bk),
        };
        if better {
            best = Some((k, c));
        }
    }
    best.map(|(k, c)| (unscale(k, scale), c))
}

fn probability(count: u64, n: usize) -> Rational {
    Rational::from(BigInt::from(count)) * Rational::inverse_power_of_two(n as u32)
}

fn within_reach<C>(points: &Points<C>) -> bool
where
    C: Coord + Into<BigInt>,
{
    // cheap rejection: |x_j| > Σ_i |v_ij| is unreachable
    let Some(target) = &points.target else { return false };
    (0..target.len()).all(|j| {
        let reach: BigInt = points.vectors.iter().map(|v| abs_big(v[j].clone())).sum();
        abs_big(target[j].clone()) <= reach
    })
}

fn abs_big<C: Into<BigInt>>(c: C) -> BigInt {
    let b: BigInt = c.into();
    if b.sign() == num_bigint::Sign::Minus {
        -b
    } else {
        b
    }
}

fn count_with<C: Coord + Into<BigInt>>(points: &Points<C>, meet_in_middle: bool) -> u64 {
    if !within_reach(points) {
        return 0;
    }
    let target = points.target.as_ref().expect("checked by within_reach");
    if meet_in_middle {
        walk::count_meet_in_the_middle(&points.vectors, target)
    } else {
        walk::count_naive(&points.vectors, target)
    }
}

/// `P(Σ εᵢvᵢ = x)` with an explicit enumeration strategy.
pub fn atom_nd_with(vectors: &[RVector], x: &RVector, strategy: Strategy) -> Result<Rational> {
    let dim = check_family(vectors)?;
    x.check_dim(dim)?;
    let n = vectors.len();
    let meet_in_middle = match strategy {
        Strategy::Naive if n <= NAIVE_LIMIT => false,
        Strategy::Naive => return Err(Error::Capacity { n, limit: NAIVE_LIMIT, what: "naive enumeration" }),
        Strategy::MeetInTheMiddle if n <= MITM_LIMIT => true,
        Strategy::Auto if n <= NAIVE_LIMIT => false,
        Strategy::Auto if n <= MITM_LIMIT => true,
        _ => return Err(Error::Capacity { n, limit: MITM_LIMIT, what: "meet-in-the-middle enumeration" }),
    };
    let (lattice, _) = Lattice::new(vectors, Some(x));
    let count = match &lattice {
        Lattice::Small(p) => count_with(p, meet_in_middle),
        Lattice::Big(p) => count_with(p, meet_in_middle),
    };
    Ok(probability(count, n))
}

/// `P(Σ εᵢvᵢ = x)`, exact.
pub fn atom_nd(vectors: &[RVector], x: &RVector) -> Result<Rational> {
    atom_nd_with(vectors, x, Strategy::Auto)
}

fn as_columns(a: &[Rational]) -> Result<Vec<RVector>> {
    if a.is_empty() {
        return Err(Error::Empty("at least one coefficient is required"));
    }
    a.iter().map(|c| RVector::new(alloc::vec![c.clone()])).collect()
}

/// `P(Σ εᵢaᵢ = t)` for scalar coefficients, exact.
pub fn atom_1d(a: &[Rational], t: &Rational) -> Result<Rational> {
    atom_nd(&as_columns(a)?, &RVector::new(alloc::vec![t.clone()])?)
}

/// `sup_x P(Σ εᵢvᵢ = x)` with an argmax target (lexicographically smallest among ties).
pub fn max_atom(vectors: &[RVector]) -> Result<(RVector, Rational)> {
    let table = SumTable::build(vectors)?;
    let (x, count) = table.argmax().expect("a table over at least one pattern is non-empty");
    Ok((x, probability(count, vectors.len())))
}

/// `max_t P(Σ εᵢaᵢ = t)` for scalar coefficients.
pub fn rho_max_1d(a: &[Rational]) -> Result<Rational> {
    max_atom(&as_columns(a)?).map(|(_, p)| p)
}
