//! CLI error type with process exit codes.

use std::path::{Path, PathBuf};

/// Errors a subcommand can exit with. Exit codes: 1 usage, 2 data quality,
/// 3 I/O.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("data quality error: {0}")]
    DataQuality(String),
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::DataQuality(_) => 2,
            CliError::Io { .. } => 3,
        }
    }

    pub fn usage(msg: impl std::fmt::Display) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn data(msg: impl std::fmt::Display) -> Self {
        CliError::DataQuality(msg.to_string())
    }

    pub fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }
}

impl From<darkscope_core::Error> for CliError {
    fn from(e: darkscope_core::Error) -> Self {
        use darkscope_core::Error;
        match e {
            Error::Usage(msg) => CliError::Usage(msg),
            Error::DataQuality(msg) => CliError::DataQuality(msg),
            Error::CountOverflow => CliError::DataQuality(e.to_string()),
            Error::AddrParse(_) => CliError::DataQuality(e.to_string()),
            Error::DegenerateFit(_) => CliError::DataQuality(e.to_string()),
        }
    }
}
