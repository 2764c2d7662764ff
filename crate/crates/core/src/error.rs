use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point set is empty")]
    Empty,

    #[error("point {index} has a non-finite coordinate ({x}, {y})")]
    NonFinite { index: usize, x: f64, y: f64 },

    #[error("invalid reduce config: {0}")]
    InvalidConfig(String),

    #[error("polygon needs at least 3 vertices, got {0}")]
    DegeneratePolygon(usize),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}: byte {offset}: {msg}")]
    Binary {
        path: PathBuf,
        offset: u64,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to build worker pool: {0}")]
    Pool(String),

    #[error("report serialization failed: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
