use std::fmt;

/// Failure categories shared by the library and the command-line driver.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("missing dependency: {0}")]
    DependencyMissing(String),
    #[error("resource refused: {0}")]
    ResourceRefused(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl fmt::Display) -> Self {
        Error::InvalidInput(msg.to_string())
    }

    pub(crate) fn internal(msg: impl fmt::Display) -> Self {
        Error::InternalConsistency(msg.to_string())
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 2,
            Error::DependencyMissing(_) => 3,
            Error::ResourceRefused(_) => 4,
            Error::InternalConsistency(_) => 5,
            Error::Io(_) => 6,
        }
    }
}
