use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("structure error: {0}")]
    Structure(String),
    #[error("capacity exceeded: {what} requires {required}, limit is {limit}")]
    Capacity {
        what: String,
        required: String,
        limit: String,
    },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cover is not normalized: {0}")]
    Normalization(String),
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn capacity(
        what: impl Into<String>,
        required: impl ToString,
        limit: impl ToString,
    ) -> Self {
        Error::Capacity {
            what: what.into(),
            required: required.to_string(),
            limit: limit.to_string(),
        }
    }
}
