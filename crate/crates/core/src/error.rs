use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("dimension mismatch: {left} vs {right} generators")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point lies on the singular set: {0}")]
    Singular(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("quadrature failure: {0}")]
    Quadrature(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
