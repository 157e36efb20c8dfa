use thiserror::Error;

/// Errors raised by the numerical kernels. Each message carries the label of
/// the module that produced it so pipeline failures can be traced.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("field-core: sampling error at node {index}: non-finite value {value}")]
    Sampling { index: usize, value: String },

    #[error("field-core: invalid weight at node {index}: {value} is not strictly positive")]
    InvalidWeight { index: usize, value: f64 },

    #[error("field-core: field length {got} does not match grid node count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("field-core: fields live on different grids")]
    GridMismatch,

    #[error("weights: weight-invariant-violation: {0}")]
    WeightInvariantViolation(String),

    #[error("dynamic-range error: {0}")]
    DynamicRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
