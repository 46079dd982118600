//! Command-line front end: family generation, zeros, limit laws,
//! comparisons and series, written as CSV or JSON.

pub mod args;
pub mod commands;
pub mod custom;
pub mod output;

pub use args::{Cli, Command, Format, RunConfig};
pub use output::Document;

/// Parses, runs and writes the output file.
pub fn run(cli: Cli) -> anyhow::Result<()> {
    let cfg = RunConfig::from_cli(cli)?;
    let doc = commands::execute(&cfg)?;
    doc.write(&cfg.out, cfg.format)
}
