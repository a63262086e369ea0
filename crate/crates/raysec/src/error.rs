use std::io;

/// Failures of the command-line layer, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] raysec_core::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// 2 for malformed input, 3 for domain errors, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::MissingKey(_) | Error::Usage(_) => 2,
            Error::Domain(_) => 3,
            Error::Io(_) | Error::Csv(_) | Error::Json(_) => 4,
        }
    }
}
