//! `pctlab`: closed-form spectra of position-dependent-mass problems and
//! their verification against a finite-difference eigensolver.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a state failed verification,
//! 3 a numerical stage failed.

mod args;
mod commands;
mod config;
mod error;
mod table;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = match args::Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // help and version go to stdout and succeed
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
