use thiserror::Error;

use crate::format::FormatError;

/// Command-level failures, each mapped to a stable exit code:
/// 2 input/parse, 3 work limit, 4 precondition, 5 unsupported count request.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("matrix is {rows} x {cols}; this command needs a square matrix")]
    NotSquareInput { rows: usize, cols: usize },
    #[error("{0}")]
    Limit(coates_core::Error),
    #[error("{0}")]
    Precondition(coates_core::Error),
    #[error("--count-only requires a symmetric arc pattern; this digraph is asymmetric")]
    UnsupportedCountOnly,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Format(_) | CliError::NotSquareInput { .. } => 2,
            CliError::Limit(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::UnsupportedCountOnly => 5,
        }
    }
}

impl From<coates_core::Error> for CliError {
    fn from(e: coates_core::Error) -> Self {
        use coates_core::Error::*;
        match e {
            CombinationLimitExceeded { .. }
            | TreeCountExceedsLimit { .. }
            | TreeLimitExceeded { .. } => CliError::Limit(e),
            _ => CliError::Precondition(e),
        }
    }
}
