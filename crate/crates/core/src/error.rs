use thiserror::Error;

/// Errors surfaced by constructions and checkers.
///
/// `Validation` carries a human-readable description of the first violated
/// constraint (which identity failed and on which generator). `Budget` is
/// raised loudly as soon as an enumeration would exceed the configured size
/// budget, never silently truncated.
#[derive(Debug, Error)]
pub enum SegalError {
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("size budget exceeded: {items} items needed, budget is {budget}")]
    Budget { items: usize, budget: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl SegalError {
    pub fn validation(msg: impl Into<String>) -> Self {
        SegalError::Validation(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        SegalError::Unsupported(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, SegalError>;
