use thiserror::Error;

/// Errors raised by the engine.
///
/// `Input` covers malformed data (bad shapes, parse failures, non-prime
/// moduli). `Precondition` means the data is well formed but the requested
/// operation is not defined for it. `Unsupported` marks questions the engine
/// deliberately does not answer on the given base ring.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
