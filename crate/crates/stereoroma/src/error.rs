//! Crate-wide error type and process exit codes.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    #[error("truncated file {path}: expected {expected} bytes, got {got}")]
    TruncatedFile {
        path: PathBuf,
        expected: usize,
        got: usize,
    },

    #[error("header/payload mismatch in {path}: {detail}")]
    HeaderMismatch { path: PathBuf, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("missing file for sample {sample}: {file}")]
    MissingSampleFile { sample: String, file: String },

    #[error("schema version mismatch: found {found}, expected {expected}")]
    SchemaVersion { found: u32, expected: u32 },

    #[error("checkpoint mismatch: {0}")]
    CheckpointMismatch(String),

    #[error("training diverged at epoch {epoch}: loss is not finite")]
    Divergence { epoch: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("image codec: {0}")]
    Codec(String),
}

impl Error {
    /// Process exit code for the CLI: 0 success, 2 config, 3 IO, 4 divergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::InvalidArgument(_) => 2,
            Error::Io(_)
            | Error::TruncatedFile { .. }
            | Error::HeaderMismatch { .. }
            | Error::UnsupportedFormat(_)
            | Error::MissingSampleFile { .. }
            | Error::SchemaVersion { .. }
            | Error::CheckpointMismatch { .. }
            | Error::Codec(_)
            | Error::Json(_) => 3,
            Error::Divergence { .. } => 4,
            Error::DimensionMismatch(_) => 2,
        }
    }
}
