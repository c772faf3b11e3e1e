use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A quartet or column violated one of its constraints.
    #[error("invalid quartet: {0}")]
    InvalidQuartet(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// `l = 0` blocks have a single sub-block.
    #[error("block with l = 0 has a single sub-block")]
    SingleSubBlock,

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("conflict: Z = {0} listed more than once")]
    Conflict(u64),

    #[error(transparent)]
    Fit(#[from] crate::fit::FitError),

    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: u64, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 4,
            Error::Fit(_) => 3,
            Error::InvalidQuartet(_)
            | Error::Domain(_)
            | Error::SingleSubBlock
            | Error::Parse { .. }
            | Error::Schema(_)
            | Error::Conflict(_)
            | Error::Json(_) => 2,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        let line = err.position().map(|p| p.line()).unwrap_or(0);
        match err.into_kind() {
            csv::ErrorKind::Io(e) => Error::Io(e),
            kind => Error::parse(line, format!("{kind:?}")),
        }
    }
}
