use std::fmt;

/// Errors raised by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed arguments: wrong vector length, residue out of range, bad counts.
    #[error("input error: {0}")]
    Input(String),
    /// The operation is not defined for this group or object.
    #[error("domain error: {0}")]
    Domain(String),
    /// A stated precondition does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The group is larger than the configured universe cap.
    #[error("universe too large: p^d = {p}^{d} exceeds the cap of {cap} cells ({hint})")]
    TooLarge { p: u64, d: u32, cap: usize, hint: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
    /// A theorem-backed dichotomy produced neither outcome. Always a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse error classes, mapped onto process exit codes by the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Parse,
    Precondition,
    Budget,
    Internal,
}

impl ErrorCategory {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorCategory::Parse => 2,
            ErrorCategory::Precondition => 3,
            ErrorCategory::Budget => 4,
            ErrorCategory::Internal => 5,
        }
    }
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorCategory::Parse => "parse",
            ErrorCategory::Precondition => "precondition",
            ErrorCategory::Budget => "budget",
            ErrorCategory::Internal => "internal",
        })
    }
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::Io(_) => ErrorCategory::Parse,
            Error::Domain(_)
            | Error::Precondition(_)
            | Error::TooLarge { .. }
            | Error::Checkpoint(_) => ErrorCategory::Precondition,
            Error::Internal(_) => ErrorCategory::Internal,
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure;
