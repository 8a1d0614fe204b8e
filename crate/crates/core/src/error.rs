use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
