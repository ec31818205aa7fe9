use std::fmt;
use std::io;

use rldg::Error;

pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;
pub const EXIT_VIOLATION: u8 = 4;

/// A failed command: message for stderr plus process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    pub fn violation(message: impl Into<String>) -> Self {
        Failure { code: EXIT_VIOLATION, message: message.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } | Error::BudgetExceeded { .. } => EXIT_LIMIT,
            Error::InvalidAlphabet { .. }
            | Error::NotALetter { .. }
            | Error::MalformedWord(_)
            | Error::ZeroRunLength { .. }
            | Error::EmptySequence
            | Error::EmptyWord
            | Error::StateLength { .. }
            | Error::MalformedPortrait(_)
            | Error::EvenN { .. }
            | Error::TooSmall { .. }
            | Error::PathTooLong { .. }
            | Error::LeafOutOfRange { .. } => EXIT_USAGE,
            _ => EXIT_VIOLATION,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("write failed: {e}") }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("json output failed: {e}") }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("csv output failed: {e}") }
    }
}
