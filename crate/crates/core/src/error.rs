use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("integrand is not finite at grid index {index} (omega = {omega:e})")]
    NonFiniteIntegrand { index: usize, omega: f64 },

    #[error("quadrature did not converge: last two estimates {previous:e} and {last:e}")]
    ConvergenceFailure { previous: f64, last: f64 },

    #[error("Green function has zero total width and was evaluated on resonance")]
    DegenerateGreen,

    #[error("Schmidt grid too coarse: truncation tail {tail:e} exceeds tolerance {tol:e}")]
    GridTooCoarse { tail: f64, tol: f64 },

    #[error("mode table evaluated at detuning {detuning:e} rad/s, outside the grid")]
    OutOfGrid { detuning: f64 },

    #[error("broadband closed form needs sigma_c >= 10 Gamma_b, got sigma_c/Gamma_b = {ratio}")]
    RegimeViolation { ratio: f64 },

    #[error("zero width: {0}")]
    ZeroWidth(&'static str),

    #[error("missing decay rate for transition `{0}`")]
    MissingRate(String),

    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}

/// Rejects values that are not finite and strictly positive.
pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(invalid(name, format!("must be finite and > 0, got {value}")))
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(invalid(name, format!("must be finite and >= 0, got {value}")))
    }
}
