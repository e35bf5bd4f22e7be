use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cbpower::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.category(),
            CliError::Io { .. } => "io",
            CliError::Format { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::CheckFailed(_) => "check-failed",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.category() {
            "check-failed" => 1,
            "usage" => 2,
            "parse" => 3,
            "validation" => 4,
            "domain" => 5,
            "capacity" => 6,
            _ => 7,
        }
    }

    /// Single-line JSON object written to stderr.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Body<'a> {
            category: &'a str,
            message: String,
        }
        #[derive(Serialize)]
        struct Envelope<'a> {
            error: Body<'a>,
        }
        serde_json::to_string(&Envelope {
            error: Body {
                category: self.category(),
                message: self.to_string(),
            },
        })
        .expect("plain strings serialize")
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
