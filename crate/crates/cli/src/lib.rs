//! Command-line front end for the `mskkt` library.

pub mod commands;
pub mod error;
pub mod parse;
pub mod report;

pub use commands::{run, Cli};
pub use error::CliError;
