use std::path::PathBuf;

/// Errors from file handling, configuration, and the core pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] littlewood_core::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed file: {0}")]
    Toml(#[from] toml::de::Error),

    #[error("cannot serialize: {0}")]
    Serialize(#[from] toml::ser::Error),

    #[error("{0}")]
    Format(String),

    #[error("invalid campaign config: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 3 for capacity limits, 2 for any other invalid input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(littlewood_core::Error::Capacity { .. }) => 3,
            _ => 2,
        }
    }
}
