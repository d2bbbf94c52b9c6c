//! `ingest`: packet CSV → window matrix files plus a reconciliation
//! summary.

use std::fs;
use std::path::PathBuf;

use clap::Args;

use darkscope_core::addr::Cidr;
use darkscope_core::window::{window_and_build, WindowSpec};

use crate::commands::write_text_or_stdout;
use crate::error::CliError;
use crate::formats::{csv, hstm, keyfile};
use crate::report::{to_json_string, IngestSummary, WindowFileSummary};

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Packet log: one `timestamp,src,dst` line per packet.
    #[arg(long)]
    pub input: PathBuf,
    /// Directory for window matrices and the ingest summary.
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Valid packets per window matrix (power of two).
    #[arg(long, default_value_t = 1 << 20)]
    pub n_valid: u64,
    /// Packets per hierarchical sub-matrix (power of two dividing n-valid).
    #[arg(long, default_value_t = 1 << 10)]
    pub sub_block: u64,
    /// Anonymization key file (64 hex chars); falls back to
    /// $DARKSCOPE_KEY_FILE, and runs unanonymized when neither is set.
    #[arg(long)]
    pub key_file: Option<PathBuf>,
    /// Internal (monitored) address blocks, comma separated. A packet is
    /// valid when its source is external and its destination internal.
    #[arg(long, value_delimiter = ',', required = true)]
    pub internal_cidrs: Vec<String>,
}

pub fn run(args: &IngestArgs) -> Result<(), CliError> {
    let spec = WindowSpec::new(args.n_valid, args.sub_block)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let cidrs: Vec<Cidr> = args
        .internal_cidrs
        .iter()
        .map(|text| Cidr::parse(text).map_err(|_| CliError::usage(format!("bad CIDR {text:?}"))))
        .collect::<Result<_, _>>()?;
    let key = keyfile::load_key(args.key_file.as_deref())?;

    let log = csv::parse_packet_log_file(&args.input)?;
    let built = window_and_build(
        &log.records,
        &spec,
        |idx| cidrs.iter().any(|c| c.contains(idx)),
        key.as_ref(),
    )?;

    fs::create_dir_all(&args.out_dir).map_err(|e| CliError::io(&args.out_dir, e))?;
    let mut windows = Vec::with_capacity(built.matrices.len());
    for (i, matrix) in built.matrices.iter().enumerate() {
        let name = format!("window_{i:04}.hstm");
        hstm::write_file(&args.out_dir.join(&name), matrix)?;
        windows.push(WindowFileSummary {
            file: name,
            total_packets: matrix.total_packets(),
            nnz: matrix.nnz() as u64,
        });
    }

    let summary = IngestSummary {
        input: args.input.display().to_string(),
        n_valid: spec.n_valid(),
        sub_block: spec.sub_block(),
        internal_cidrs: cidrs.iter().map(Cidr::to_string).collect(),
        anonymized: key.is_some(),
        scheme_id: key.as_ref().map(|k| k.scheme_id().to_string()),
        parsed_records: log.records.len() as u64,
        malformed_lines: log.malformed.len() as u64,
        valid_packets: built.valid,
        discarded: built.discarded,
        windows,
        remainder: built.remainder,
    };
    write_text_or_stdout(Some(&args.out_dir.join("ingest.json")), &to_json_string(&summary))?;
    println!(
        "ingest: {} windows of {} packets, remainder {}, discarded {} -> {}",
        summary.windows.len(),
        summary.n_valid,
        summary.remainder,
        summary.discarded,
        args.out_dir.display()
    );
    Ok(())
}
