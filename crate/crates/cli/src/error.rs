use std::path::PathBuf;

use thiserror::Error;
use twoqubit_core::schema::StateFileError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    State(#[from] StateFileError),
    #[error("invalid input: {0}")]
    Input(String),
    /// Two criteria that must coincide did not.
    #[error("internal disagreement: {0}")]
    Disagreement(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::State(_) | CliError::Input(_) => 2,
            CliError::Disagreement(_) => 3,
        }
    }
}

impl From<twoqubit_core::Error> for CliError {
    fn from(e: twoqubit_core::Error) -> Self {
        CliError::State(StateFileError::State(e))
    }
}
