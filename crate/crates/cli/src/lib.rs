//! File formats, reports and subcommands of the `rbprelie` tool.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;

pub use commands::{run, Outcome};
pub use error::CliError;
