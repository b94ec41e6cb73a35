//! IO, verification campaigns, and the command line for `littlewood-core`.

pub mod campaign;
mod error;
pub mod formats;
pub mod parallel;

pub use error::{Error, Result};
