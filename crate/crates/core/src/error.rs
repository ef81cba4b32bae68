use thiserror::Error;

/// Errors raised by graph construction, parsing, detection and search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A structural result that should be impossible was observed; this
    /// points at a bug in the implementation.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// The requested search is beyond what this build will attempt.
    #[error("infeasible: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
