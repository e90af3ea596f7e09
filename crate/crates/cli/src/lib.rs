//! Command implementations behind the `metaphor` binary.
//!
//! Each subcommand lives in [`commands`] as a `run` function taking its
//! clap argument struct and returning a structured summary, so the same
//! entry points serve the binary and integration tests.

pub mod commands;
pub mod provider;
pub mod record;
pub mod util;

use std::path::PathBuf;

use thiserror::Error;

/// Errors with dedicated process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("required input {} does not exist", .0.display())]
    MissingInput(PathBuf),
}

/// Exit code for an error chain: 2 for missing inputs, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.chain().any(|cause| cause.is::<CliError>()) {
        2
    } else {
        1
    }
}
