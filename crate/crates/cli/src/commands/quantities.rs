//! `quantities`: matrix file(s) → the scalar network-quantity table as
//! JSON.

use std::path::PathBuf;

use clap::Args;

use darkscope_core::aggregate;

use crate::commands::{read_and_merge_matrices, write_text_or_stdout};
use crate::error::CliError;
use crate::report::{to_json_string, QuantitiesReport};

#[derive(Debug, Args)]
pub struct QuantitiesArgs {
    /// Matrix file; repeat to merge several windows first.
    #[arg(long = "matrix", required = true)]
    pub matrices: Vec<PathBuf>,
    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &QuantitiesArgs) -> Result<(), CliError> {
    let merged = read_and_merge_matrices(&args.matrices)?;
    let report = QuantitiesReport::from(aggregate(&merged));
    write_text_or_stdout(args.out.as_ref(), &to_json_string(&report))
}
