use std::path::PathBuf;

/// Failure of a bench command, mapped onto the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: apcd::Error },

    #[error("configuration: {0}")]
    Config(String),

    #[error("dataset `{0}` has no ground-truth labels")]
    MissingLabels(String),

    #[error("dataset `{dataset}`: {source}")]
    Data { dataset: String, source: apcd::Error },

    #[error("dataset `{dataset}`, method {method}: {source}")]
    Algorithm { dataset: String, method: String, source: apcd::Error },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl BenchError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BenchError::Io { path: path.into(), source }
    }

    /// 2 for I/O, 3 for data problems, 4 for degenerate algorithm runs.
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Io { .. } | BenchError::Csv(_) => 2,
            BenchError::Parse { .. }
            | BenchError::Config(_)
            | BenchError::MissingLabels(_)
            | BenchError::Data { .. } => 3,
            BenchError::Algorithm { .. } => 4,
        }
    }
}

pub type BenchResult<T> = Result<T, BenchError>;
