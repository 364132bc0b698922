use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("element is not idempotent modulo the radical")]
    NotIdempotentModRadical,
    #[error("radical is not a Hopf ideal: {0}")]
    ChevalleyViolation(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
