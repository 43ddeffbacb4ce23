//! Argument parsing and dispatch for the `smt` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands;
use crate::config::{Overrides, RunConfig};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "smt", version, about = "Spherical mean transform: simulate data and invert it from partial radii")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in phantoms and their default parameters.
    Phantoms,
    /// Simulate spherical-mean data and write it as CSV.
    Simulate(#[command(flatten)] Overrides),
    /// Invert a data file.
    Invert {
        /// CSV with header `t,value` or `theta,phi,t,value`.
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Simulate, invert and score against the phantom.
    Roundtrip(#[command(flatten)] Overrides),
    /// Run the exact and numeric identity suites.
    Identities {
        #[arg(long = "max-k", default_value_t = 8)]
        max_k: usize,
        #[arg(long = "max-q", default_value_t = 2)]
        max_q: usize,
        /// Also write identities.json into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump the exact ODE coefficient table.
    Coeffs {
        #[arg(long)]
        dim: u32,
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
}

fn print(out: &mut impl Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

/// Executes a parsed command, writing results to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut impl Write) -> CliResult<i32> {
    match cli.command {
        Command::Phantoms => {
            print(out, &commands::phantoms())?;
            Ok(0)
        }
        Command::Simulate(o) => {
            let cfg = RunConfig::resolve(&o)?;
            let path = commands::simulate(&cfg)?;
            print(out, &format!("{}\n", path.display()))?;
            Ok(0)
        }
        Command::Invert { data, overrides } => {
            let cfg = RunConfig::resolve(&overrides)?;
            let report = commands::invert(&cfg, &data)?;
            print(out, &report.to_json())?;
            Ok(0)
        }
        Command::Roundtrip(o) => {
            let cfg = RunConfig::resolve(&o)?;
            let report = commands::roundtrip(&cfg)?;
            print(out, &report.to_json())?;
            Ok(0)
        }
        Command::Identities { max_k, max_q, out: dir } => {
            let report = commands::identities(max_k, max_q, dir.as_deref())?;
            print(out, &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
            Ok(if report.passed { 0 } else { 3 })
        }
        Command::Coeffs { dim, q } => {
            let v = commands::coeffs(dim, q)?;
            print(out, &(serde_json::to_string_pretty(&v).expect("json") + "\n"))?;
            Ok(0)
        }
    }
}
