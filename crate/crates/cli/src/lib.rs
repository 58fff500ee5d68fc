//! Command-line front end for `logmono-core`.

pub mod args;
pub mod commands;
pub mod error;
pub mod expansion;
pub mod expr;
pub mod recfile;
pub mod report;
pub mod selftest;

pub use args::Cli;
pub use commands::{execute, run};
pub use error::{CliError, ExitStatus};
