//! Command-line front end: generate model instances, verify their Jordan
//! Osserman profile, check geometric realizations and render reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use commands::{cmd_gen, cmd_realize, cmd_report, cmd_verify, Output};
pub use config::{CausalChoice, Family, OutputFormat, RunConfig};
pub use error::{CliError, Result};
pub use report::Report;
