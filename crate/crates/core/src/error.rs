use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("{name} = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("Kraus set is not complete (max |sum E^dagger E - I| = {deviation:.3e})")]
    IncompleteChannel { deviation: f64 },

    #[error("channel annihilated the state (pre-normalization trace {trace:.3e})")]
    AnnihilatedState { trace: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown figure preset `{0}`")]
    UnknownPreset(String),

    #[error("at grid point (alpha={alpha}, r={r}, gamma={gamma:?}): {source}")]
    AtGridPoint {
        alpha: f64,
        r: f64,
        gamma: Option<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors originating in the filesystem.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io { .. } | Error::Csv(_) => true,
            Error::AtGridPoint { source, .. } => source.is_io(),
            _ => false,
        }
    }
}
