use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{quantity} is not defined at r = {r}")]
    Domain { quantity: &'static str, r: f64 },

    #[error("operand mismatch: {0}")]
    Mismatch(String),

    #[error("operator is not invertible: diagonal entry {index} is {value}")]
    NotInvertible { index: usize, value: f64 },

    #[error("basis index ({m}, {n}) exceeds the supported capacity {limit}")]
    Capacity { m: usize, n: usize, limit: usize },

    #[error("sequence too short: need {needed} terms, have {available}")]
    InsufficientLength { needed: usize, available: usize },

    #[error("recurrence produced a non-finite or non-positive value at step {step}")]
    NonFinite { step: usize },

    #[error("boundary term not converged: {value} at r_max, {doubled} at 2 r_max")]
    NotConverged { value: f64, doubled: f64 },

    #[error("exponent a(phi0) is not monotone over the scan range")]
    NotMonotone { trace: Vec<(f64, f64)> },

    #[error("no seed in the scan range brackets the target exponent")]
    NoBracket { trace: Vec<(f64, f64)> },

    #[error("singular value encountered: {0}")]
    Singular(String),

    #[error("conformal factor denominator is non-positive ({value}) at r = {r}")]
    NonPositiveFactor { r: f64, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
