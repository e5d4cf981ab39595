use std::path::PathBuf;

use thiserror::Error;

/// Every failure the pipeline can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("unit error: {0}")]
    Unit(String),
    #[error("invalid filter spec: {0}")]
    FilterSpec(String),
    #[error("series too short: {0}")]
    TooShort(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("label error: {0}")]
    Label(String),
    #[error("corpus format error: {0}")]
    CorpusFormat(String),
    #[error("not enough windows for class {class}: need {needed}, have {available}")]
    Shortage {
        class: String,
        needed: usize,
        available: usize,
    },
    #[error("config error: {0}")]
    Config(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("incompatible file: {0}")]
    Compatibility(String),
    #[error("corrupt file: {0}")]
    Corruption(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("training diverged at epoch {0}")]
    Diverged(usize),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
