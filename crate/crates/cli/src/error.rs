use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Codec {
        path: PathBuf,
        #[source]
        source: enumcode::Error,
    },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn codec(path: impl Into<PathBuf>, source: enumcode::Error) -> Self {
        CliError::Codec { path: path.into(), source }
    }

    /// 2 usage, 3 I/O, 4 malformed input or container, 5 corrupt payload.
    pub fn exit_code(&self) -> i32 {
        use enumcode::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Csv(_) => 3,
            CliError::Codec { source, .. } => match source {
                E::Truncated { .. }
                | E::CorruptField { .. }
                | E::TrailingData { .. }
                | E::RankOutOfRange => 5,
                E::InvalidParams(_) | E::TooLarge { .. } => 2,
                _ => 4,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
