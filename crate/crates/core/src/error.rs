use thiserror::Error;

/// Errors raised by the algebra, torus and report layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid scalar: {0}")]
    InvalidScalar(String),
    #[error("signature mismatch: {left} vs {right}")]
    SignatureMismatch { left: String, right: String },
    #[error("invalid signature ({p},{q}): p + q must be a positive even number")]
    InvalidSignature { p: usize, q: usize },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("integer matrix is not unimodular (|det| = {0})")]
    NonUnimodular(String),
    #[error("element is not in the integer subring: {0}")]
    NotIntegral(String),
    #[error("lattice is not preserved by {0}")]
    LatticeNotPreserved(String),
    #[error("points belong to different lattices")]
    LatticeMismatch,
    #[error("enumeration of {count} points exceeds cap {cap}")]
    EnumerationTooLarge { count: String, cap: u64 },
    #[error("polarization is not principal: type {0}")]
    NotPrincipal(String),
    #[error("grade-1 element {0} does not square to +1 or -1")]
    NotUnitVector(String),
    #[error("decomposition witness failed: {0}")]
    WitnessFailed(String),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("generator index e{index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} coordinates, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
