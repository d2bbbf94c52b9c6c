//! On-disk interchange formats.

pub mod csv;
pub mod hstm;
pub mod keyfile;
pub mod months;
pub mod tsv;

use std::fs;
use std::path::Path;

use crate::error::CliError;

pub(crate) fn read_file_string(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub(crate) fn read_file_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

pub(crate) fn write_file_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}
