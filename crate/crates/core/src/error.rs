//! Error types shared across the crate.

use thiserror::Error;

/// Errors caused by invalid configuration or mismatched shapes.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("dimension mismatch: {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("invalid config field `{field}`: {message}")]
    InvalidField { field: String, message: String },
    #[error("missing required config field `{field}`")]
    MissingField { field: String },
    #[error("config parse error: {0}")]
    Parse(String),
}

impl ConfigError {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::InvalidField {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// Errors raised by environment misuse.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnvError {
    #[error("step() called on a terminal episode; call reset() first")]
    SteppedTerminalEpisode,
}

/// Errors raised during training.
#[derive(Debug, Error)]
pub enum TrainError {
    #[error("non-finite loss in batch {batch_id}")]
    NonFiniteLoss { batch_id: String },
    #[error("non-finite gradient for tensor `{tensor}` in batch {batch_id}; step rejected")]
    NonFiniteGradient { tensor: String, batch_id: String },
    #[error("non-finite parameter value in tensor `{tensor}` after update")]
    NonFiniteParam { tensor: String },
    #[error(
        "ratio filter removed every transition of policy {policy_id}'s batch; \
         switch to another ratio form or raise the filter threshold"
    )]
    AllTransitionsFiltered { policy_id: usize },
    #[error("environment error at agent ({policy_id}, {agent_id}): {source}")]
    Env {
        policy_id: usize,
        agent_id: usize,
        source: EnvError,
    },
    #[error("internal length mismatch: {context}: expected {expected}, got {actual}")]
    LengthMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
}
