//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QloopError {
    #[error("not a simply-laced Cartan type: {0}")]
    UnsupportedType(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("expansion-direction error: {0}")]
    Expansion(String),
    #[error("completion error: {0}")]
    Completion(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("integrality error: {0}")]
    Integrality(String),
    #[error("unsupported rewrite: {0}")]
    UnsupportedRewrite(String),
    #[error("unassigned letter: {0}")]
    Unassigned(String),
    #[error("non-integrable vector: {0}")]
    NonIntegrable(String),
    #[error("solver precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, QloopError>;
