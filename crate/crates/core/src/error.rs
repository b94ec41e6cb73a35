use alloc::string::String;

/// Errors raised by the exact pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("capacity exceeded: n = {n} is above the limit of {limit} for {what}")]
    Capacity { n: usize, limit: usize, what: &'static str },

    #[error("perturbation failed: {0}")]
    PerturbationFailed(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
