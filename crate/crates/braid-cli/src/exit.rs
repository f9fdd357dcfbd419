//! Error classification onto the fixed exit codes: 0 ok, 2 input error,
//! 3 algebraic invariant failure, 4 protocol/wire error.

use std::fmt;

use braid_core::BraidError;

#[derive(Debug)]
pub enum CliError {
    /// Unparseable or schema-invalid input; exit 2.
    Input(String),
    /// An algebraic invariant failed to hold; exit 3.
    Algebra(String),
    /// Session frame or transport trouble; exit 4.
    Wire(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> CliError {
        CliError::Input(msg.into())
    }

    pub fn algebra(msg: impl Into<String>) -> CliError {
        CliError::Algebra(msg.into())
    }

    pub fn wire(msg: impl Into<String>) -> CliError {
        CliError::Wire(msg.into())
    }

    pub fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Algebra(_) => 3,
            CliError::Wire(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Algebra(m) => write!(f, "algebraic failure: {m}"),
            CliError::Wire(m) => write!(f, "wire error: {m}"),
        }
    }
}

impl From<BraidError> for CliError {
    fn from(e: BraidError) -> CliError {
        match e {
            BraidError::NonCommutingSubgroups
            | BraidError::NotCentralizing { .. }
            | BraidError::VerificationFailed
            | BraidError::DecompositionInvariant
            | BraidError::HandleBudgetExhausted { .. } => CliError::Algebra(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
