//! Subcommand implementations.

pub mod correlate;
pub mod distribution;
pub mod ingest;
pub mod plotdata;
pub mod quantities;
pub mod synth;

use std::path::PathBuf;

use darkscope_core::{hierarchical_sum, TrafficMatrix};

use crate::error::CliError;
use crate::formats::hstm;

/// Identifier-space tag for data flowing through the CLI. The toolkit
/// assumes telescope and outpost inputs already share one identifier
/// space; cross-space reconciliation happens upstream of these files.
pub const ID_SPACE: &str = "common";

pub(crate) fn read_and_merge_matrices(paths: &[PathBuf]) -> Result<TrafficMatrix, CliError> {
    let matrices: Vec<TrafficMatrix> = paths
        .iter()
        .map(|p| hstm::read_file(p))
        .collect::<Result<_, _>>()?;
    hierarchical_sum(&matrices).map_err(CliError::from)
}

pub(crate) fn write_text_or_stdout(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(path) => crate::formats::write_file_bytes(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
