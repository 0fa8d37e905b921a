use std::path::PathBuf;

/// Failure categories of the command-line front end, each with its own
/// process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("check failed: {0}")]
    Acceptance(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("convergence failure: {0}")]
    Convergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Acceptance(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Convergence(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<unruh_core::Error> for CliError {
    fn from(e: unruh_core::Error) -> Self {
        match e {
            unruh_core::Error::ConvergenceFailure { .. } => CliError::Convergence(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
