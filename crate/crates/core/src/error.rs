use thiserror::Error;

/// Errors raised by evaluation, frame-bound and sweep routines.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the supported domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series or product could not reach the requested accuracy.
    #[error("convergence error: {0}")]
    Convergence(String),
    /// An optimizer bracket could not be placed strictly inside the search range.
    #[error("range error: {0}")]
    Range(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
