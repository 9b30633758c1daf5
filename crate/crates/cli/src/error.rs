use thiserror::Error;

/// Failures that end a command with exit code 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at {pointer}: {message}")]
    Config { pointer: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] mtlab_core::Error),
}
