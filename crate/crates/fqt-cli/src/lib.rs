//! Command line companion to `fqt-core`: CSV dataset formats, report
//! rendering, and the `fqt` binary's argument handling.

#![deny(unsafe_code)]

pub mod commands;
pub mod error;
pub mod formats;
pub mod render;

pub use error::CliError;

use clap::Parser;

/// Parses process arguments, runs the selected subcommand, and returns
/// the exit code: 0 on success (and for `--help`/`--version`), 1 for
/// usage, parse, and validation failures, 2 when fitting rejects an
/// otherwise well-formed dataset.
pub fn run() -> i32 {
    let cli = match commands::Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = i32::from(err.use_stderr());
            let _ = err.print();
            return code;
        }
    };
    match commands::dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
