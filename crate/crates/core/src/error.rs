use thiserror::Error;

/// Errors raised by the algebra and matrix layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("probability {value} is outside [0, 1]")]
    ProbabilityOutOfRange { value: f64 },

    #[error("exclusive sum {sum} exceeds 1")]
    ExclusivityViolation { sum: f64 },

    #[error("negative probability mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },

    #[error("series is not monotone at index {index}")]
    NotMonotone { index: usize },

    #[error("delay of {ticks} ticks exceeds the horizon of {max} ticks")]
    HorizonExceeded { ticks: u64, max: u32 },

    #[error("canonical latency distribution should always end with non-zero value")]
    NonCanonical,

    #[error("{0} of empty series")]
    Empty(&'static str),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix dimension must be at least 1")]
    ZeroDimension,

    #[error("index ({row}, {col}) out of bounds for {dim}x{dim} matrix")]
    IndexOutOfBounds { row: usize, col: usize, dim: usize },

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("Solution did not converge within {steps} steps")]
    DidNotConverge { steps: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
