use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the function is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The call itself is malformed (bad order, mismatched lengths, unknown id, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// Adaptive quadrature ran out of refinement levels.
    #[error("quadrature did not converge: best value {value:e}, error estimate {err_estimate:e}")]
    Convergence { value: f64, err_estimate: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
