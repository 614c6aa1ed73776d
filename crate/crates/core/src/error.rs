use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("no convergence after {iterations} iterations (residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("matrix is rank deficient: numerical rank {rank} of {cols} columns")]
    RankDeficient { rank: usize, cols: usize },

    #[error("model condition violated: {0}")]
    ModelCondition(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("peak search exhausted the grid after {found} of {requested} peaks")]
    Exhausted { found: usize, requested: usize },

    #[error("parameter outside the supported regime: {0}")]
    OutOfRegime(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Short kebab-case name of the variant, for tagging failed runs.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Convergence { .. } => "convergence",
            Error::RankDeficient { .. } => "rank-deficient",
            Error::ModelCondition(_) => "model-condition",
            Error::DivisionByZero(_) => "division-by-zero",
            Error::Exhausted { .. } => "exhausted",
            Error::OutOfRegime(_) => "out-of-regime",
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
        }
    }
}
