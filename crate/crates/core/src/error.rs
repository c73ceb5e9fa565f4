use thiserror::Error;

use crate::report::CheckReport;
use crate::vertex::Side;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a vertex set over side {expected}, got side {found}")]
    SideMismatch { expected: Side, found: Side },

    #[error("vertex {side}{index} out of range (side has {count} vertices)")]
    OutOfRange { side: Side, index: usize, count: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The operation is only defined on inputs passing a prior check; the
    /// failed check is attached.
    #[error("precondition failed: {message}")]
    Precondition {
        message: String,
        report: Option<Box<CheckReport>>,
    },

    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: msg.into(),
        }
    }
}
