use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("palette line {line}: {message}")]
    PaletteParse { line: usize, message: String },

    #[error("invalid palette: {0}")]
    PaletteValidation(String),

    #[error("palette index {index} out of range (palette has {len} entries)")]
    EntryOutOfRange { index: usize, len: usize },

    #[error("sample size must be at least 1")]
    EmptySample,

    #[error("cannot draw {n} pixels without replacement from an image of {total}")]
    SampleTooLarge { n: usize, total: usize },

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("missing coupling coefficient for symbol {0}")]
    MissingCoupling(String),

    #[error("coupling coefficient is zero for symbol {0}; equivocation is unbounded")]
    ZeroCoupling(String),

    #[error("invalid outcome: {0}")]
    InvalidOutcome(String),

    #[error("{}: not found", .0.display())]
    NotFound(PathBuf),

    #[error("{}: unsupported image format {format}", path.display())]
    UnsupportedFormat { path: PathBuf, format: String },

    #[error("{}: {message}", path.display())]
    Decode { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Index(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        let path = path.into();
        if source.kind() == std::io::ErrorKind::NotFound {
            Error::NotFound(path)
        } else {
            Error::Io { path, source }
        }
    }

    /// Process exit status for the command-line tool: 1 usage, 2 input, 3 invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EmptySample
            | Error::SampleTooLarge { .. }
            | Error::InvalidArgument(_)
            | Error::InvalidDistribution(_)
            | Error::MissingCoupling(_)
            | Error::ZeroCoupling(_)
            | Error::InvalidOutcome(_)
            | Error::EntryOutOfRange { .. } => 1,
            Error::PaletteParse { .. }
            | Error::PaletteValidation(_)
            | Error::InvalidImage(_)
            | Error::NotFound(_)
            | Error::UnsupportedFormat { .. }
            | Error::Decode { .. }
            | Error::Io { .. }
            | Error::Index(_)
            | Error::Json(_) => 2,
            Error::Invariant(_) => 3,
        }
    }
}
