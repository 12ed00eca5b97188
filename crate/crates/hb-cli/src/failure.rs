//! Process-level failure classification and exit codes.
//!
//! Exit codes: 0 success, 1 check failed (a mathematical assertion the run
//! was asked to verify does not hold, or the input is not a member where
//! membership is required), 2 usage error (bad arguments, malformed function
//! spec, I/O problems with the requested output path), 3 numerical
//! instability (a computation refused to continue rather than return
//! garbage).

use hb_core::Error as CoreError;

/// A failed run, carrying the message to print on stderr.
#[derive(Debug)]
pub enum Failure {
    /// Invalid arguments or I/O: exit 2.
    Usage(String),
    /// A checked assertion was violated: exit 1.
    Check(String),
    /// A computation detected instability and stopped: exit 3.
    Instability(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Check(_) => 1,
            Failure::Instability(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) | Failure::Instability(m) => m,
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NotMember { .. } => Failure::Check(e.to_string()),
            CoreError::DivisionUnstable { .. }
            | CoreError::SectionSolveUnstable { .. }
            | CoreError::NonFinite(_)
            | CoreError::NonIntegrableLogModulus => Failure::Instability(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<crate::fspec::ParseError> for Failure {
    fn from(e: crate::fspec::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}
