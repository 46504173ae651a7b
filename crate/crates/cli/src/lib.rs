//! Command-line harness around `asai-core`: configuration, a class-table
//! cache, and JSON reports.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use cli::run;
pub use commands::{cmd_asai, cmd_classes, cmd_easy_check, cmd_validate, execute, Outcome};
pub use config::{Command, GroupSpec, RunConfig};
pub use error::{CliError, Exit};
