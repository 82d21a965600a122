use thiserror::Error;

use crate::scalar::Ring;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no inverse")]
    ZeroInverse,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("missing matrix `{0}`")]
    MissingMatrix(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("decomposition failed at stage `{stage}`: {detail}")]
    DecompositionFailure { stage: String, detail: String },

    #[error("characteristic 2 is not supported for Hermitian systems")]
    CharacteristicTwo,

    #[error("right-hand side `{0}` is not Hermitian")]
    NotHermitianRhs(String),

    #[error("expected a {expected} instance, found {found}")]
    WrongKind { expected: String, found: String },

    #[error("system is infeasible")]
    Infeasible,

    #[error("exhaustive search too large: {0}")]
    TooLarge(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::ShapeMismatch(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::InternalInconsistency(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
