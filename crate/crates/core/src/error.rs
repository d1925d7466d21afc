use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{op}: n = {n} exceeds the exact limit {limit}; use {alternative}")]
    ExactLimit {
        op: &'static str,
        n: usize,
        limit: usize,
        alternative: &'static str,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error("eigensolver did not converge (residual {residual:e})")]
    NonConvergence { residual: f64 },

    #[error("undefined quantity: {0}")]
    Undefined(String),

    #[error("search budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    /// A step that the underlying argument proves impossible actually happened.
    /// On inputs that satisfy the hypothesis this signals a bug.
    #[error("contradiction: {0}")]
    Contradiction(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
