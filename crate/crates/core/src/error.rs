use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("subspace is not positive definite under the intersection pairing")]
    NotPositiveDefinite,

    #[error("degenerate intersection form")]
    Degenerate,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("malformed class: {0}")]
    MalformedClass(String),

    #[error("criterion inapplicable: {0}")]
    Inapplicable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cannot classify: {0}")]
    Unclassified(String),

    #[error("out of range: {0}")]
    OutOfRange(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }
}
