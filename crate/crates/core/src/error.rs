use std::io;

use thiserror::Error;

/// Errors raised while loading data, configuring a run, or misusing a stateful API.
#[derive(Debug, Error)]
pub enum AditumError {
    /// Malformed input file or record.
    #[error("format error{}: {message}", location(.line))]
    Format { line: Option<usize>, message: String },

    /// Inconsistent or unusable configuration (empty target set, missing class, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Caller violated an API contract (double commit, size mismatch, ...).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn location(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!(" at line {l}"),
        None => String::new(),
    }
}

impl AditumError {
    pub fn format(message: impl Into<String>) -> Self {
        AditumError::Format {
            line: None,
            message: message.into(),
        }
    }

    pub fn format_at(line: usize, message: impl Into<String>) -> Self {
        AditumError::Format {
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        AditumError::Config(message.into())
    }

    pub fn usage(message: impl Into<String>) -> Self {
        AditumError::Usage(message.into())
    }

    /// Process exit code for the command-line front end: 1 for usage, 2 for data problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            AditumError::Usage(_) | AditumError::Config(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, AditumError>;
