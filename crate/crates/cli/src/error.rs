use std::path::PathBuf;

use thiserror::Error;

/// Process exit statuses.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const DIVERGENCE: u8 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{file}:{line}: {message}")]
    Parse { file: String, line: usize, message: String },

    #[error("clause {clause} has {found} literals, expected 3")]
    ClauseArity { clause: usize, found: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] popmatch::Error),

    #[error("characterization and brute force disagree; reproduction written to {}", path.display())]
    Divergence { path: PathBuf },

    #[error("characterization and brute force disagree: {0}")]
    Disagreement(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(popmatch::Error::BudgetExceeded { .. }) => exit::BUDGET,
            CliError::Core(popmatch::Error::InternalNonImprovement { .. }) => exit::DIVERGENCE,
            CliError::Divergence { .. } | CliError::Disagreement(_) => exit::DIVERGENCE,
            _ => exit::INVALID,
        }
    }

    pub(crate) fn parse(file: &str, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse { file: file.to_string(), line, message: message.into() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
