//! Command-line front end: file formats, DOT output and the `graphstab`
//! subcommands.

pub mod commands;
pub mod dot;
pub mod formats;

pub use commands::{run, Outcome, EXIT_FAIL, EXIT_INVALID, EXIT_PARSE, EXIT_PASS};
