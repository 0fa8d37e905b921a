use alloc::string::String;

/// Errors raised by the field computations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An input that must be finite was NaN or infinite.
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    /// A model or numerical parameter is outside its allowed range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Argument outside the domain of a function.
    #[error("domain error: {0}")]
    Domain(&'static str),

    /// The point lies on the horizon `u = 0` or `v = 0`.
    #[error("point (u={u}, v={v}) lies on a null horizon")]
    BoundaryPoint { u: f64, v: f64 },

    /// The point lies on the oscillator trajectory `λ = 0`.
    #[error("point lies on the trajectory (lambda={lambda})")]
    OnTrajectory { lambda: f64 },

    /// The point is inside a guard band around the horizon or trajectory.
    #[error("point (u={u}, v={v}) is too close to the singular set: {reason}")]
    TooCloseToSingularSet { u: f64, v: f64, reason: &'static str },

    /// The phase `|ln x|` of an integrand exceeds the supported range.
    #[error("log-phase {log_ratio} exceeds the supported range")]
    RangeLimit { log_ratio: f64 },

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: estimate {estimate}, error {error}")]
    ConvergenceFailure { estimate: crate::ComplexValue, error: f64 },

    /// A function was called outside its documented contract.
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn finite(x: f64, what: &'static str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what))
    }
}
