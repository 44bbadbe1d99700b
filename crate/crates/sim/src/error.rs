use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error(transparent)]
    Core(#[from] csd_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown initial data spec: {0}")]
    DataSpec(String),

    #[error("malformed trajectory file: {0}")]
    Format(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, SimError>;

impl SimError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SimError::Io {
            path: path.into(),
            source,
        }
    }

    /// Stable machine-readable category.
    pub fn kind(&self) -> &'static str {
        use csd_core::Error as E;
        match self {
            SimError::Core(E::BlowUp { .. }) => "blow-up",
            SimError::Core(E::Parse(_)) => "parse",
            SimError::Core(E::Regression(_)) => "regression",
            SimError::Core(E::InvalidConfig(_) | E::StepTooLarge { .. }) => "config",
            SimError::Core(_) => "numerics",
            SimError::Io { .. } => "io",
            SimError::Config(_) => "config",
            SimError::DataSpec(_) => "parse",
            SimError::Format(_) => "format",
            SimError::Json(_) | SimError::Csv(_) => "serialization",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "config" | "parse" => 2,
            "blow-up" => 4,
            "regression" => 3,
            _ => 1,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        let (step, time) = match self {
            SimError::Core(csd_core::Error::BlowUp { step, time }) => (Some(*step), Some(*time)),
            _ => (None, None),
        };
        ErrorRecord {
            error: self.kind(),
            message: self.to_string(),
            exit_code: self.exit_code(),
            step,
            time,
        }
    }
}

/// What a failed run prints on stderr as a single JSON line.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorRecord {
    pub error: &'static str,
    pub message: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
}
