use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A documented precondition was violated by the caller.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configurable search or enumeration cap was hit.
    #[error("{what} exceeded cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    /// An internal consistency check failed. Seeing this means a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistent(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
