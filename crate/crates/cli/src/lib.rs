//! Library half of the `qmol` command-line tool: configuration, the
//! subcommands and their CSV/PGM serializers.

#![allow(clippy::needless_range_loop)]

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use thiserror::Error;

pub use config::{Command, GridSpec, Overrides, RunConfig, SweepKindArg};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Numeric(#[from] qmol::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 2 for configuration, 3 for numerical failure, 4 when no solution exists.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(qmol::Error::NoRealSolution { .. }) => 4,
            CliError::Numeric(qmol::Error::InvalidParameter(_)) => 2,
            CliError::Numeric(_) | CliError::Verification(_) => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
