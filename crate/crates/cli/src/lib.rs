//! Command-line front end for `boson-bounds`.
//!
//! The binary is a thin wrapper around [`run`]; everything it prints goes
//! through a caller-supplied writer so the commands are testable in-process.

pub mod args;
pub mod report;
pub mod sweep;
pub mod verify;

use std::io::Write;

use boson_bounds::Error;

pub use args::{Cli, Command};

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameter values; exit code 2.
    Usage(String),
    /// Numerical failure, failed verification or I/O trouble; exit code 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter { .. } | Error::UnsupportedDimension(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Bounds(a) => report::cmd_bounds(&a, out),
        Command::Sweep(a) => sweep::cmd_sweep(&a.into_config(), out),
        Command::Physical(a) => report::cmd_physical(&a, out),
        Command::Verify(a) => verify::cmd_verify(&a, out),
    }
}
