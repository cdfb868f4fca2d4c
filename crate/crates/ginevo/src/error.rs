use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// QR iteration failed to converge within the sweep cap. Never silently
    /// classified: callers must treat the whole spectrum as unavailable.
    #[error("eigenvalue iteration did not converge after {sweeps} sweeps (n = {n})")]
    NumericalFailure { n: usize, sweeps: usize },

    /// A pivot fell below the degeneracy floor while tracking a determinant
    /// sign, so the sign is not trustworthy.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Adaptive quadrature exhausted its subdivision budget. The achieved
    /// error estimate is attached so callers can decide whether to accept.
    #[error("quadrature did not reach tolerance: achieved error {achieved:e}")]
    ToleranceFailure { achieved: f64, value: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Format(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
