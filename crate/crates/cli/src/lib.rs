//! Command-line front end for `popmatch`: file formats, run reports, the
//! differential fuzzer, and the subcommands that wire them together.

pub mod commands;
pub mod error;
pub mod formats;
pub mod fuzz;
pub mod report;

pub use commands::{run, Cli};
pub use error::{exit, CliError, CliResult};
