//! `synth`: generate a synthetic two-site dataset on disk — telescope
//! packet log, outpost month files, and the generative ground truth.

use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};

use darkscope_core::addr::Cidr;
use darkscope_core::synth::{synth_two_site, ShareLaw, SynthConfig};
use darkscope_core::timecoord;

use crate::error::CliError;
use crate::formats::{csv, months, write_file_bytes};
use crate::report::{write_json_file, GroundTruthReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShareLawKind {
    /// Share probability grows with log2 of source brightness.
    Brightness,
    /// Flat base rate for every source.
    Constant,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Directory receiving packets.csv, months/, and ground_truth.json.
    #[arg(long)]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    pub n_sources: u32,
    #[arg(long, default_value_t = 2.0)]
    pub zm_alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub zm_delta: f64,
    /// Largest brightness the generator can draw.
    #[arg(long, default_value_t = 1 << 17)]
    pub zm_support_max: u64,
    /// Brightness-law scaling constant (paper-scale window size).
    #[arg(long, default_value_t = 1 << 30)]
    pub n_valid: u64,
    #[arg(long, default_value_t = 15)]
    pub months: u32,
    /// First outpost month, "YYYY-MM".
    #[arg(long, default_value = "2020-01")]
    pub start_month: String,
    /// Telescope capture date, "YYYY-MM-DD".
    #[arg(long, default_value = "2020-06-17")]
    pub capture: String,
    #[arg(long, default_value_t = 1.0)]
    pub drift_alpha: f64,
    #[arg(long, default_value_t = 4.0)]
    pub drift_beta: f64,
    #[arg(long, value_enum, default_value_t = ShareLawKind::Brightness)]
    pub share_law: ShareLawKind,
    /// Share probability when --share-law constant.
    #[arg(long, default_value_t = 0.5)]
    pub base_rate: f64,
    /// Internal (telescope) address block.
    #[arg(long, default_value = "10.0.0.0/8")]
    pub internal_cidr: String,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

pub fn run(args: &SynthArgs) -> Result<(), CliError> {
    let (start_year, start_month) = timecoord::parse_year_month(&args.start_month)
        .map_err(|_| CliError::usage(format!("bad --start-month {:?}", args.start_month)))?;
    let internal = Cidr::parse(&args.internal_cidr)
        .map_err(|_| CliError::usage(format!("bad --internal-cidr {:?}", args.internal_cidr)))?;
    let share_law = match args.share_law {
        ShareLawKind::Brightness => ShareLaw::Brightness,
        ShareLawKind::Constant => ShareLaw::Constant(args.base_rate),
    };
    let config = SynthConfig {
        n_sources: args.n_sources,
        zm_alpha: args.zm_alpha,
        zm_delta: args.zm_delta,
        zm_support_max: args.zm_support_max,
        n_valid: args.n_valid,
        months: args.months,
        start_year,
        start_month,
        capture_label: args.capture.clone(),
        drift_alpha: args.drift_alpha,
        drift_beta: args.drift_beta,
        share_law,
        internal,
        seed: args.seed,
    };
    let output = synth_two_site(&config).map_err(|e| CliError::usage(e.to_string()))?;

    let months_dir = args.out_dir.join("months");
    fs::create_dir_all(&months_dir).map_err(|e| CliError::io(&months_dir, e))?;
    write_file_bytes(
        &args.out_dir.join("packets.csv"),
        csv::packets_to_csv(&output.packets).as_bytes(),
    )?;
    for window in &output.outposts {
        months::write_month_file(&months_dir, &window.label, &window.sources)?;
    }

    let truth = &output.ground_truth;
    let report = GroundTruthReport {
        seed: config.seed,
        n_sources: config.n_sources,
        zm_alpha: config.zm_alpha,
        zm_delta: config.zm_delta,
        zm_support_max: config.zm_support_max,
        n_valid: config.n_valid,
        months: config.months,
        start_month: args.start_month.clone(),
        capture_label: config.capture_label.clone(),
        drift_alpha: config.drift_alpha,
        drift_beta: config.drift_beta,
        share_law: match config.share_law {
            ShareLaw::Brightness => "brightness".to_string(),
            ShareLaw::Constant(_) => "constant".to_string(),
        },
        base_rate: match config.share_law {
            ShareLaw::Brightness => None,
            ShareLaw::Constant(rate) => Some(rate),
        },
        internal_cidr: internal.to_string(),
        t0: truth.t0,
        time_coordinate: timecoord::TIME_COORDINATE_ID.to_string(),
        month_labels: truth.month_labels.clone(),
        month_coords: truth.month_coords.clone(),
        packets_file: "packets.csv".to_string(),
        months_dir: "months".to_string(),
    };
    write_json_file(&args.out_dir.join("ground_truth.json"), &report)?;
    println!(
        "synth: {} sources, {} packets, {} outpost months -> {}",
        config.n_sources,
        output.packets.len(),
        config.months,
        args.out_dir.display()
    );
    Ok(())
}
