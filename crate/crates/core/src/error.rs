use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("complex is not minimal; minimize it first")]
    NotMinimal,

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("no solution in internal degree {degree} at homological degree {homological}")]
    NotExact { homological: usize, degree: u32 },

    #[error("certification failed: {0}")]
    Certification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
