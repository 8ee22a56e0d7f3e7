//! Library surface of the qvac command-line tool; the binary in main.rs is a
//! thin wrapper so the commands and the verification suite are testable.

// negated comparisons are deliberate: they reject NaN along with the sign
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod commands;
pub mod config;
pub mod output;

#[derive(Debug)]
pub enum CliError {
    /// invalid configuration (exit 2)
    Config(String),
    /// numerical failure (exit 3)
    Numeric(String),
    /// fit failure (exit 4)
    Fit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Fit(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numeric(m) | CliError::Fit(m) => m,
        }
    }
}

/// Exit code signalling verification failures in `reproduce`.
pub const EXIT_ACCEPTANCE_FAILURE: i32 = 5;
