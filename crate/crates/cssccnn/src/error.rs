use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("calibration failure: {0}")]
    CalibrationFailure(String),

    #[error("fit failure: {0}")]
    FitFailure(String),

    #[error("generation failure: {0}")]
    GenerationFailure(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("bad file format: {0}")]
    Format(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
