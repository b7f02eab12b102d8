//! Command-level error type and the exit-code contract.
//!
//! | exit code | meaning                                                |
//! |-----------|--------------------------------------------------------|
//! | 0         | success                                                |
//! | 2         | parse error (grammar, flags, or config file)           |
//! | 3         | factorization bound exceeded                           |
//! | 4         | adaptive truncation precision cap exceeded             |
//! | 5         | domain precondition violation (non-homogeneous input,  |
//! |           | non-unit coordinates, arity mismatches, ...)           |
//! | 1         | any other failure (I/O)                                |

use crate::parse::ParseError;
use std::fmt;

/// Errors surfaced by subcommands, each mapping to a process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Text in one of the value grammars failed to parse.
    Parse(ParseError),
    /// A flag value or config entry is malformed.
    Usage(String),
    /// A core operation rejected its input.
    Core(berkstat_core::Error),
    /// Filesystem failure.
    Io(String),
}

impl CliError {
    /// The process exit code of this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Core(berkstat_core::Error::FactorBoundExceeded { .. }) => 3,
            CliError::Core(berkstat_core::Error::PrecisionCapExceeded { .. }) => 4,
            CliError::Core(_) => 5,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error at {}", e),
            CliError::Usage(m) => write!(f, "{}", m),
            CliError::Core(e) => write!(f, "{}", e),
            CliError::Io(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<berkstat_core::Error> for CliError {
    fn from(e: berkstat_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn exit_codes_follow_the_contract() {
        let parse = CliError::Parse(crate::parse::parse_scalar("(").unwrap_err());
        assert_eq!(parse.exit_code(), 2);
        assert_eq!(CliError::Usage("bad flag".into()).exit_code(), 2);
        let bound = CliError::Core(berkstat_core::Error::FactorBoundExceeded {
            bound: 10,
            remaining: BigInt::from(101),
        });
        assert_eq!(bound.exit_code(), 3);
        let cap = CliError::Core(berkstat_core::Error::PrecisionCapExceeded { cap: 16 });
        assert_eq!(cap.exit_code(), 4);
        assert_eq!(
            CliError::Core(berkstat_core::Error::NotHomogeneous).exit_code(),
            5
        );
        assert_eq!(CliError::Io("disk".into()).exit_code(), 1);
    }
}
