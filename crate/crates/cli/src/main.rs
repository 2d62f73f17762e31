//! `hsdepth`: halfspace depth from the command line.
//!
//! Exit codes: 0 on success, 2 on bad input or flags, 3 when a time or
//! node limit stopped a solve, 1 on internal solver failures.

mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use crate::args::Cli;
use crate::commands::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
    }
}
