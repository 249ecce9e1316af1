use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Incompatible shapes or factor dimensions.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// A result would exceed the configured dimension cap.
    #[error("size error: {what} needs dimension {requested}, cap is {cap}")]
    Size {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    /// Matrix is not of the required form (square, Hermitian, finite).
    #[error("shape error: {0}")]
    Shape(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    Convergence { sweeps: usize, off_norm: f64 },

    /// Not a density operator within tolerance.
    #[error("state error: {0}")]
    State(String),

    #[error("parameter error: {0}")]
    Parameter(String),

    /// A channel certificate check failed.
    #[error("validation error: {check} deviates by {deviation:e} (tolerance {tolerance:e})")]
    Validation {
        check: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    /// The requested search strategy cannot handle this channel.
    #[error("strategy error: {0}")]
    Strategy(String),

    /// A theorem hypothesis does not hold for the given parameters.
    #[error("hypothesis error: {0}")]
    Hypothesis(String),

    #[error("parse error: {0}")]
    Parse(String),
}
