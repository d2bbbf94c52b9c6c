//! `plotdata`: convert a result JSON (distribution or correlation) into
//! CSV for external plotting.

use std::path::PathBuf;

use clap::Args;

use crate::commands::write_text_or_stdout;
use crate::error::CliError;
use crate::formats::read_file_string;
use crate::report::plot_csv_from_json;

#[derive(Debug, Args)]
pub struct PlotdataArgs {
    /// A JSON result produced by `distribution` or `correlate`.
    #[arg(long)]
    pub input: PathBuf,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &PlotdataArgs) -> Result<(), CliError> {
    let text = read_file_string(&args.input)?;
    let csv = plot_csv_from_json(&text)?;
    write_text_or_stdout(args.out.as_ref(), &csv)
}
