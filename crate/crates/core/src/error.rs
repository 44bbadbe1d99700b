use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),

    #[error("grid mismatch: expected n={expected_n}, L={expected_extent}; found n={found_n}, L={found_extent}")]
    GridMismatch {
        expected_n: usize,
        expected_extent: f64,
        found_n: usize,
        found_extent: f64,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("internal consistency check failed: {what} (deviation {deviation:e}, tolerance {tolerance:e})")]
    Consistency {
        what: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    #[error("current is not real: imaginary part {0:e} exceeds tolerance")]
    Hermiticity(f64),

    #[error("trajectory too short: {found} frames, need at least {needed}")]
    TooFewFrames { found: usize, needed: usize },

    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("step size too large: dt * (m + |psi0|^2_(H^1/2)) = {product} exceeds {limit}")]
    StepTooLarge { product: f64, limit: f64 },

    #[error("non-finite value at step {step} (t = {time})")]
    BlowUp { step: usize, time: f64 },

    #[error("zero input: {0}")]
    ZeroInput(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("corpus regression: {0}")]
    Regression(String),
}
