//! Command-line front end: phantom registry, configuration, CSV/JSON I/O,
//! simulate / invert / roundtrip pipelines and the identity suites.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod identities;
pub mod io;
pub mod phantoms;
pub mod pipeline;
pub mod report;

pub use config::RunConfig;
pub use error::{CliError, CliResult};
