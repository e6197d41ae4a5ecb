use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} = {got} exceeds the supported maximum of {max}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        max: usize,
    },

    /// The Jacobi iteration did not reach the requested off-diagonal norm.
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NumericFailure { sweeps: usize, off_norm: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
