use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed dataset file. Carries the offending sample index when known.
    #[error("parse error{}: {msg}", .sample.map(|s| format!(" at sample {s}")).unwrap_or_default())]
    Parse { sample: Option<usize>, msg: String },

    /// Invalid parameter or precondition violation.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// Invalid experiment configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Numerical failure (eigen-solver breakdown, solver divergence).
    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(sample: Option<usize>, msg: impl Into<String>) -> Self {
        Error::Parse {
            sample,
            msg: msg.into(),
        }
    }
}
