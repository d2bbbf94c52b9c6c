//! `correlate`: telescope matrices plus outpost month files → temporal
//! correlation curve with modified-Cauchy, Cauchy, and Gaussian fits.

use std::path::PathBuf;

use clap::Args;

use darkscope_core::correlation::{
    fit_cauchy, fit_gaussian, fit_modified_cauchy, temporal_curve, SourceSet,
};
use darkscope_core::quantities::source_packets;

use crate::commands::{read_and_merge_matrices, write_text_or_stdout, ID_SPACE};
use crate::error::CliError;
use crate::formats::{months, write_file_bytes};
use crate::report::{correlation_plot_csv, correlation_report, to_json_string};

#[derive(Debug, Args)]
pub struct CorrelateArgs {
    /// Telescope window matrix; repeat to merge a capture's windows.
    #[arg(long = "telescope-matrix", required = true)]
    pub telescope_matrices: Vec<PathBuf>,
    /// Telescope window label, "YYYY-MM-DD" or "YYYY-MM"; fixes t0.
    #[arg(long)]
    pub telescope_label: String,
    /// Directory of outpost month files named YYYY-MM.txt.
    #[arg(long)]
    pub outpost_dir: PathBuf,
    /// Brightness bin exponent i: sources with 2^i <= packets < 2^{i+1}.
    #[arg(long, default_value_t = 14)]
    pub brightness_exponent: u32,
    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write `t,fraction,model_*` plot data here.
    #[arg(long)]
    pub plot_csv: Option<PathBuf>,
}

pub fn run(args: &CorrelateArgs) -> Result<(), CliError> {
    let merged = read_and_merge_matrices(&args.telescope_matrices)?;
    let telescope = SourceSet::from_degree_vector(
        args.telescope_label.clone(),
        ID_SPACE,
        &source_packets(&merged),
    )
    .map_err(|e| CliError::usage(e.to_string()))?;
    let outposts = months::read_outpost_dir(&args.outpost_dir, ID_SPACE)?;

    let curve = temporal_curve(&telescope, args.brightness_exponent, &outposts)?;
    let mc = fit_modified_cauchy(&curve)?;
    let cauchy = fit_cauchy(&curve)?;
    let gaussian = fit_gaussian(&curve)?;
    let report = correlation_report(&curve, &mc, &cauchy, &gaussian);
    if let Some(path) = &args.plot_csv {
        write_file_bytes(path, correlation_plot_csv(&report).as_bytes())?;
    }
    write_text_or_stdout(args.out.as_ref(), &to_json_string(&report))
}
