//! Command-line front end and file formats for the `darkscope-core`
//! analytics: binary and CSV matrix interchange, packet-log parsing,
//! outpost month files, TSV associative arrays, and the JSON reports each
//! subcommand emits.

pub mod commands;
pub mod error;
pub mod formats;
pub mod report;

pub use error::CliError;
