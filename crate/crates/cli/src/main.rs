//! `thicket` command-line front end.
//!
//! Exit statuses: 0 success, 1 invalid input, 2 usage error, 70 internal
//! invariant violation (including a failing suite row or an oracle that
//! disagrees with a computed result).

mod commands;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = commands::Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("thicket: {e}");
            ExitCode::from(e.status())
        }
    }
}
