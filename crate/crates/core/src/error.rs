use thiserror::Error;

/// Errors raised by the exact algebra and geometry routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chart mismatch: s = {left} vs s = {right}")]
    ChartMismatch { left: usize, right: usize },
    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("operator is not nilpotent along direction {direction:?}")]
    NonNilpotent { direction: Vec<String> },
    #[error("invalid rank sequence: {0}")]
    InvalidSequence(String),
    #[error("no {causal} vector found after {attempts} draws")]
    SamplingExhausted { causal: String, attempts: usize },
    #[error("metric is degenerate at the base point")]
    DegenerateMetric,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
