//! `distribution`: matrix file(s) → binned degree distribution with its
//! Zipf-Mandelbrot fit, as JSON and optionally plot CSV.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use darkscope_core::distributions::{bin_degrees, fit_zipf_mandelbrot};
use darkscope_core::quantities::{
    destination_fanin, destination_packets, source_fanout, source_packets,
};

use crate::commands::{read_and_merge_matrices, write_text_or_stdout};
use crate::error::CliError;
use crate::formats::write_file_bytes;
use crate::report::{distribution_plot_csv, distribution_report, to_json_string};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityKind {
    SourcePackets,
    SourceFanout,
    DestinationPackets,
    DestinationFanin,
}

#[derive(Debug, Args)]
pub struct DistributionArgs {
    /// Matrix file; repeat to merge several windows first.
    #[arg(long = "matrix", required = true)]
    pub matrices: Vec<PathBuf>,
    /// Which per-vertex quantity to bin and fit.
    #[arg(long, value_enum, default_value_t = QuantityKind::SourcePackets)]
    pub quantity: QuantityKind,
    /// Output JSON path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write `d,D` plot data here.
    #[arg(long)]
    pub plot_csv: Option<PathBuf>,
}

pub fn run(args: &DistributionArgs) -> Result<(), CliError> {
    let merged = read_and_merge_matrices(&args.matrices)?;
    let degrees = match args.quantity {
        QuantityKind::SourcePackets => source_packets(&merged),
        QuantityKind::SourceFanout => source_fanout(&merged),
        QuantityKind::DestinationPackets => destination_packets(&merged),
        QuantityKind::DestinationFanin => destination_fanin(&merged),
    };
    let binned = bin_degrees(&degrees)?;
    let fit = fit_zipf_mandelbrot(&binned)?;
    let report = distribution_report(&binned, &fit)?;
    if let Some(path) = &args.plot_csv {
        write_file_bytes(path, distribution_plot_csv(&report).as_bytes())?;
    }
    write_text_or_stdout(args.out.as_ref(), &to_json_string(&report))
}
