use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the documented domain of an operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// The truncated point pattern cannot meet the requested accuracy.
    #[error("truncation budget too small: {detail}")]
    Truncation { detail: String },

    /// An operation needed more points than it was given.
    #[error("{op} needs at least {needed} point(s), got {got}")]
    TooFewPoints { op: &'static str, needed: usize, got: usize },

    /// A requested level was not attained by an estimated curve.
    #[error("level {level} outside attained range [{lo}, {hi}]")]
    OutOfRange { level: f64, lo: f64, hi: f64 },

    /// An integral failed its convergence or decay check.
    #[error("integral diverges or failed to converge: {detail}")]
    Divergence { detail: String },

    /// A simulation configuration violates an invariant.
    #[error("invalid configuration: {detail}")]
    Config { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn config(detail: impl Into<String>) -> Self {
        Error::Config { detail: detail.into() }
    }
}
