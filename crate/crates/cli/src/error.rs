use thiserror::Error;

use crate::format::ShapeError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: parse error: {message}")]
    Parse { path: String, message: String },
    #[error("{path}: {error}")]
    Shape { path: String, error: ShapeError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rbprelie::Error),
}

impl CliError {
    /// `1` when the failure is mathematical, `2` for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(rbprelie::Error::NotCocycle(_)) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Shape { .. } => "shape",
            CliError::Usage(_) => "usage",
            CliError::Core(rbprelie::Error::NotCocycle(_)) => "not a cocycle",
            CliError::Core(_) => "invalid input",
        }
    }
}
