use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("objects live over different fields")]
    FieldMismatch,
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("not a module homomorphism: {0}")]
    NotAMap(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown name: {0}")]
    NotFound(String),
    #[error("workspace error: {0}")]
    Workspace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
