//! Norms on `Qᵈ`: evaluation, exact ceilings, closed-form duals and
//! dual-optimal witnesses.

mod eval;
mod spec;
mod vector;
mod witness;

pub use eval::{ceil_norm, dual_eval, norm_eval, NormValue};
pub(crate) use eval::{ceil_norm_u64, lp_float};
pub use spec::{Functionals, LpExponent, NormSpec};
pub use vector::{rank, RVector};
pub use witness::{certify_dual_membership, double_dual_check, dual_witness, holder_check, Scale, Witness};
