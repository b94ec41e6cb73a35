//! Exact integer lattice for a family of rational vectors.
//!
//! Every coordinate is multiplied by the least common multiple `L` of all
//! denominators, so sums become integer vectors and equal sums collide as
//! equal keys. When all partial sums provably fit, `i64` coordinates are
//! used instead of big integers.

use alloc::vec::Vec;
use core::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactnum::Rational;
use crate::norms::RVector;

pub(crate) trait Coord: Clone + Eq + Ord + Hash {
    fn zero() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn sub_assign(&mut self, other: &Self);
    fn double(&self) -> Self;
}

impl Coord for i64 {
    fn zero() -> Self {
        0
    }
    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= *other;
    }
    fn double(&self) -> Self {
        2 * *self
    }
}

impl Coord for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign(&mut self, other: &Self) {
        *self -= other;
    }
    fn double(&self) -> Self {
        self << 1
    }
}

/// Integer images of a vector family (and optionally a target) at a common scale.
pub(crate) enum Lattice {
    Small(Points<i64>),
    Big(Points<BigInt>),
}

pub(crate) struct Points<C> {
    pub vectors: Vec<Vec<C>>,
    /// `None` when the target is off the lattice and hence unreachable.
    pub target: Option<Vec<C>>,
}

// Partial sums are bounded by Σ|v| + |x|; doubling steps need one more bit.
const SMALL_LIMIT: i64 = i64::MAX / 8;

impl Lattice {
    /// Returns the lattice and the scale `L`.
    pub fn new(vectors: &[RVector], target: Option<&RVector>) -> (Lattice, BigInt) {
        let mut scale = BigInt::one();
        for c in vectors.iter().flat_map(RVector::iter) {
            scale = scale.lcm(c.denom());
        }
        let to_int = |c: &Rational| -> BigInt { c.numer() * (&scale / c.denom()) };
        let big_vectors: Vec<Vec<BigInt>> =
            vectors.iter().map(|v| v.iter().map(to_int).collect()).collect();
        let big_target: Option<Vec<BigInt>> = target.and_then(|x| {
            x.iter()
                .map(|c| {
                    let scaled = c * &Rational::from(scale.clone());
                    scaled.is_integer().then(|| scaled.numer().clone())
                })
                .collect()
        });

        let dim = vectors.first().map_or(0, RVector::dim);
        let fits = (0..dim).all(|j| {
            let mut total: BigInt = big_vectors.iter().map(|v| v[j].abs()).sum();
            if let Some(t) = &big_target {
                total += t[j].abs();
            }
            total <= BigInt::from(SMALL_LIMIT)
        });
        let lattice = if fits {
            let shrink = |v: &Vec<BigInt>| -> Vec<i64> { v.iter().map(|c| c.to_i64().expect("checked bound")).collect() };
            Lattice::Small(Points {
                vectors: big_vectors.iter().map(shrink).collect(),
                target: big_target.as_ref().map(shrink),
            })
        } else {
            Lattice::Big(Points { vectors: big_vectors, target: big_target })
        };
        (lattice, scale)
    }
}

pub(crate) fn unscale<C: Clone + Into<BigInt>>(key: &[C], scale: &BigInt) -> RVector {
    let coords = key
        .iter()
        .map(|c| Rational::new(c.clone().into(), scale.clone()).expect("scale is positive"))
        .collect();
    RVector::new(coords).expect("non-empty key")
}
