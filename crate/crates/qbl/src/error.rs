use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed spec: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid spec: {0}")]
    Spec(String),
    #[error("cannot parse {what} `{input}`")]
    Parse { what: &'static str, input: String },
    #[error("missing required flag --{0}")]
    MissingFlag(&'static str),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] qbl_core::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
