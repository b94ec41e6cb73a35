//! The projection argument as an executable pipeline: dual witness,
//! perturbation when a projection vanishes, one-dimensional image, bound.

mod instance;
mod project;
mod verify;

pub use instance::{Instance, LP_TOLERANCE};
pub use project::{perturb_witness, project, ProjectedInstance};
pub use verify::{verify_float_mode, verify_instance, FloatModeReport, VerificationReport};
