use thiserror::Error;

/// Errors raised by the solver, oracle, analysis and file formats.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A malformed forbidden-position file.
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A query beyond what a table or point set covers.
    #[error("range error: {0}")]
    Range(String),

    /// A request that would exceed the configured memory ceiling.
    #[error("resource error: {0}")]
    Resource(String),

    /// A corrupt or foreign cache stream.
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn range(msg: impl Into<String>) -> Error {
    Error::Range(msg.into())
}
