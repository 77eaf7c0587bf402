use thiserror::Error;

use crate::form::ObjectId;

/// Errors raised by forms, their instances and the algorithms built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown object {0}")]
    UnknownObject(ObjectId),

    /// A handle or argument outside the domain of an operation
    /// (mixed fibers, out-of-range indices, unmet preconditions).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input data: group tables, lattices, series.
    #[error("validation error: {0}")]
    Validation(String),

    /// The instance failed to behave like a noetherian form.
    #[error("instance integrity error: {0}")]
    Integrity(String),

    /// A projection required to be conormal by the refinement construction is not.
    #[error("refinement proviso failed: {0}")]
    Proviso(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn integrity(msg: impl Into<String>) -> Self {
        Error::Integrity(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Validation(format!("malformed JSON: {e}"))
    }
}
