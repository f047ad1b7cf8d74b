use std::fmt;

use thiserror::Error;

/// Partial progress recorded when a computation hits one of its caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapReport {
    pub what: &'static str,
    pub limit: u64,
    /// Counts per completed level or stage, when the computation is levelled.
    pub partial: Vec<usize>,
}

impl fmt::Display for CapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} exceeded cap {}", self.what, self.limit)?;
        if !self.partial.is_empty() {
            write!(f, " (partial counts per level: {:?})", self.partial)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("computation cap: {0}")]
    CapExceeded(CapReport),

    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("unsupported folding: {0}")]
    UnsupportedFolding(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }

    pub fn cap(what: &'static str, limit: u64, partial: Vec<usize>) -> Self {
        Error::CapExceeded(CapReport {
            what,
            limit,
            partial,
        })
    }

    /// Process exit code for the command-line front end:
    /// 1 invalid input, 2 computation cap, 3 internal or oracle inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::Parse { .. }
            | Error::UnsupportedFolding(_)
            | Error::Io(_) => 1,
            Error::CapExceeded(_) => 2,
            Error::Inconsistency(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
