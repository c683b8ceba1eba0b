use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {dim}: expected at least {min}")]
    InvalidDimension { dim: usize, min: usize },

    #[error("expected dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("probability vector is empty")]
    Empty,

    #[error("entry {index} is not a finite non-negative number: {value}")]
    InvalidEntry { index: usize, value: f64 },

    #[error("entries sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("tensor product of length {len} exceeds the limit of {max}")]
    TensorTooLarge { len: u128, max: usize },

    #[error("numeric failure: {0}")]
    NumericFailure(String),

    #[error("construction is not a valid probability vector: {0:?}")]
    InfeasibleConstruction(Vec<f64>),

    #[error("cannot bin a NaN value")]
    NanValue,

    #[error("histogram edges differ")]
    EdgeMismatch,

    #[error("invalid bin specification: {0}")]
    InvalidBins(String),

    #[error("copy count must be at least 1")]
    ZeroCopies,

    #[error("invalid copy counts m={m}, n={n}: need m >= n >= 1")]
    InvalidCopyCounts { m: u32, n: u32 },
}
