use thiserror::Error;

/// Failures of a CLI command, each mapped to a stable exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error(transparent)]
    Core(#[from] nfl_core::Error),
}

impl CliError {
    /// 0 success, 1 usage/parse error, 2 capacity error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_capacity() => 2,
            _ => 1,
        }
    }
}
