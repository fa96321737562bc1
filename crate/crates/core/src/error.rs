use thiserror::Error;

/// Errors raised by loss construction, evaluation and the center searches.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input {0}")]
    NonFinite(f64),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("auxiliary sum f(x)+f(-x) = {sum} is outside the domain of g (must exceed {low})")]
    AuxiliaryDomain { sum: f64, low: f64 },

    #[error("auxiliary transform check failed: {0}")]
    AuxiliaryCheck(String),

    #[error("loss `{0}` is not strictly convex and differentiable; the gradient-sign search cannot use it")]
    NotStrictlyConvex(String),

    #[error(
        "invalid bracket [{low}, {high}]: cumulative gradient must be <= 0 at the low end and >= 0 at the high end (got {grad_low}, {grad_high})"
    )]
    InvalidBracket {
        low: f64,
        high: f64,
        grad_low: f64,
        grad_high: f64,
    },

    #[error("sample set is empty")]
    EmptySampleSet,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(x))
    }
}
