//! Exact arithmetic: canonical rationals, binomials, Rademacher-sum atoms
//! and the non-uniform Littlewood–Offord bound.

mod combinatorics;
mod rational;

pub use combinatorics::{
    binomial, ceil_sqrt, delta, floor_sqrt, lo_bound, rademacher_atom, sqrt_lower_bound,
    sqrt_upper_bound, ParityOffset,
};
pub use rational::Rational;
