//! Crate-wide error type and exit-code mapping.

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by any stage of the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    // -- configuration --
    #[error("config syntax error in {path}: {detail}")]
    ConfigSyntax { path: PathBuf, detail: String },
    #[error("invalid config: {0}")]
    ConfigInvalid(String),

    // -- repository --
    #[error("repository error: {0}")]
    Repo(String),
    #[error("no commits matched the configured range")]
    EmptyHistory,
    #[error("build failed for commit {commit}: {detail}")]
    BuildFailed { commit: String, detail: String },

    // -- measurement backends --
    #[error("energy backend unavailable: {0}")]
    BackendUnavailable(String),
    #[error("energy backend error: {0}")]
    Backend(String),

    // -- statistics --
    #[error("sample too small: {got} < {min}")]
    SampleTooSmall { got: usize, min: usize },
    #[error("sample too large: {got} > {max}")]
    SampleTooLarge { got: usize, max: usize },
    #[error("degenerate sample (zero variance)")]
    DegenerateSample,
    #[error("empty sample")]
    EmptySample,
    #[error("both samples have zero variance with differing means")]
    SignificantDegenerate,
    #[error("pooled standard deviation is zero")]
    DegeneratePooledSd,
    #[error("baseline aggregate must be positive, got {0}")]
    InvalidBaseline(f64),
    #[error("baseline MAD is zero; modified z-scores undefined")]
    MadDegenerate,

    // -- report / io --
    #[error("report I/O error at {path}: {source}")]
    ReportIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("no usable data: {0}")]
    NoData(String),
    #[error("system is unstable (first violation at probe index {0})")]
    Unstable(usize),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code taxonomy used by the CLI: 1 config, 2 unstable, 3 no data, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unstable(_) => 2,
            Error::NoData(_) | Error::EmptyHistory => 3,
            Error::ReportIo { .. } | Error::Io(_) | Error::Json(_) => 4,
            _ => 1,
        }
    }
}
