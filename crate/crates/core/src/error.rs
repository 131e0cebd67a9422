use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("ground sets differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("partitions are not comparable: {0} is not below {1}")]
    NotComparable(String, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bound exceeded: {what} = {value} > {limit}")]
    Bound { what: &'static str, value: usize, limit: usize },
    #[error("missing table entry for {0}")]
    Missing(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
