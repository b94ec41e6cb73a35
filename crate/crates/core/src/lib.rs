//! Exact Littlewood–Offord machinery.
//!
//! Atom probabilities `P(Σ εᵢvᵢ = x)` for independent Rademacher signs `εᵢ`
//! are computed by exact enumeration over canonical rationals, compared
//! against the non-uniform bound `C(n, ⌈(n+k)/2⌉) / 2ⁿ` with `k = ⌈‖x‖⌉`,
//! and the dual-witness projection argument that reduces any norm on `Qᵈ`
//! to the one-dimensional case is executed step by step so that every
//! inequality in the chain can be checked on concrete instances.
//!
//! The crate is `no_std` and only needs `alloc`. IO, campaigns and the
//! command line live in the `littlewood` crate.

#![no_std]

extern crate alloc;

pub mod concentration;
mod error;
pub mod exactnum;
pub mod norms;
pub mod reduction;

pub use crate::concentration::{
    atom_1d, atom_nd, atom_nd_with, max_atom, rho_max_1d, SignPattern, Strategy, SumTable,
};
pub use crate::error::{Error, Result};
pub use crate::exactnum::{
    binomial, ceil_sqrt, delta, lo_bound, rademacher_atom, ParityOffset, Rational,
};
pub use crate::norms::{
    ceil_norm, double_dual_check, dual_eval, dual_witness, holder_check, norm_eval, NormSpec,
    NormValue, RVector, Scale, Witness,
};
pub use crate::reduction::{
    perturb_witness, project, verify_float_mode, verify_instance, FloatModeReport, Instance,
    ProjectedInstance, VerificationReport,
};
