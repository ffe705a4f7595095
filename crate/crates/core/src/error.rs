use thiserror::Error;

/// Errors raised by histograms, estimators, oracles and generators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("query on empty state")]
    Empty,

    #[error("rejected item: {0}")]
    RejectedItem(String),

    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: &'static str, limit: usize },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("generation error: {0}")]
    Generation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
