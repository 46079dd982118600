use std::process::ExitCode;

use clap::Parser;
use zerodist::Cli;

fn main() -> ExitCode {
    match zerodist::run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
