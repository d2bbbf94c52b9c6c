//! JSON report shapes emitted by the subcommands, plus their plot-CSV
//! projections. Field names are part of the interchange contract.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use darkscope_core::correlation::{
    cauchy_model, gaussian_model, modified_cauchy, CauchyFit, CorrelationCurve, GaussianFit,
    ModifiedCauchyFit,
};
use darkscope_core::distributions::{BinnedDistribution, ZipfMandelbrotFit};
use darkscope_core::timecoord::TIME_COORDINATE_ID;
use darkscope_core::NetworkQuantities;

use crate::error::CliError;
use crate::formats::write_file_bytes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantitiesReport {
    pub valid_packets: u64,
    pub unique_links: u64,
    pub max_link_packets: u64,
    pub unique_sources: u64,
    pub max_source_packets: u64,
    pub max_source_fanout: u64,
    pub unique_destinations: u64,
    pub max_destination_packets: u64,
    pub max_destination_fanin: u64,
}

impl From<NetworkQuantities> for QuantitiesReport {
    fn from(q: NetworkQuantities) -> Self {
        Self {
            valid_packets: q.valid_packets,
            unique_links: q.unique_links,
            max_link_packets: q.max_link_packets,
            unique_sources: q.unique_sources,
            max_source_packets: q.max_source_packets,
            max_source_fanout: q.max_source_fanout,
            unique_destinations: q.unique_destinations,
            max_destination_packets: q.max_destination_packets,
            max_destination_fanin: q.max_destination_fanin,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinRow {
    pub i: u32,
    pub count: u64,
    pub p: f64,
    #[serde(rename = "P")]
    pub cumulative: f64,
    #[serde(rename = "D")]
    pub differential: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionReport {
    pub alpha: f64,
    pub delta: f64,
    pub residual: f64,
    pub support_max: u64,
    pub bins: Vec<BinRow>,
}

pub fn distribution_report(
    binned: &BinnedDistribution,
    fit: &ZipfMandelbrotFit,
) -> Result<DistributionReport, CliError> {
    let views = binned.probability_views()?;
    let bins = binned
        .counts()
        .iter()
        .enumerate()
        .map(|(i, &count)| BinRow {
            i: i as u32,
            count,
            p: views.p[i],
            cumulative: views.cumulative[i],
            differential: views.differential[i],
        })
        .collect();
    Ok(DistributionReport {
        alpha: fit.alpha,
        delta: fit.delta,
        residual: fit.residual,
        support_max: binned.support_max(),
        bins,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModifiedCauchyReport {
    pub alpha: f64,
    pub beta: f64,
    pub peak: f64,
    pub residual: f64,
    pub one_month_drop: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyReport {
    pub gamma: f64,
    pub peak: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianReport {
    pub sigma: f64,
    pub peak: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitsReport {
    pub modified_cauchy: ModifiedCauchyReport,
    pub cauchy: CauchyReport,
    pub gaussian: GaussianReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointRow {
    pub t: f64,
    pub fraction: f64,
    pub matched: u64,
    pub eligible: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub t0: f64,
    pub brightness_exponent: u32,
    pub time_coordinate: String,
    pub points: Vec<PointRow>,
    pub fits: FitsReport,
}

pub fn correlation_report(
    curve: &CorrelationCurve,
    mc: &ModifiedCauchyFit,
    cauchy: &CauchyFit,
    gaussian: &GaussianFit,
) -> CorrelationReport {
    CorrelationReport {
        t0: curve.reference_time,
        brightness_exponent: curve.brightness_exponent,
        time_coordinate: TIME_COORDINATE_ID.to_string(),
        points: curve
            .points
            .iter()
            .map(|p| PointRow {
                t: p.t,
                fraction: p.fraction,
                matched: p.matched,
                eligible: p.eligible,
            })
            .collect(),
        fits: FitsReport {
            modified_cauchy: ModifiedCauchyReport {
                alpha: mc.alpha,
                beta: mc.beta,
                peak: mc.peak,
                residual: mc.residual,
                one_month_drop: mc.one_month_drop,
            },
            cauchy: CauchyReport {
                gamma: cauchy.gamma,
                peak: cauchy.peak,
                residual: cauchy.residual,
            },
            gaussian: GaussianReport {
                sigma: gaussian.sigma,
                peak: gaussian.peak,
                residual: gaussian.residual,
            },
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowFileSummary {
    pub file: String,
    pub total_packets: u64,
    pub nnz: u64,
}

/// Everything needed to reconcile an ingest run: parsed counts, filter
/// losses, per-window totals, and the trailing remainder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestSummary {
    pub input: String,
    pub n_valid: u64,
    pub sub_block: u64,
    pub internal_cidrs: Vec<String>,
    pub anonymized: bool,
    pub scheme_id: Option<String>,
    pub parsed_records: u64,
    pub malformed_lines: u64,
    pub valid_packets: u64,
    pub discarded: u64,
    pub windows: Vec<WindowFileSummary>,
    pub remainder: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthReport {
    pub seed: u64,
    pub n_sources: u32,
    pub zm_alpha: f64,
    pub zm_delta: f64,
    pub zm_support_max: u64,
    pub n_valid: u64,
    pub months: u32,
    pub start_month: String,
    pub capture_label: String,
    pub drift_alpha: f64,
    pub drift_beta: f64,
    pub share_law: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_rate: Option<f64>,
    pub internal_cidr: String,
    pub t0: f64,
    pub time_coordinate: String,
    pub month_labels: Vec<String>,
    pub month_coords: Vec<f64>,
    pub packets_file: String,
    pub months_dir: String,
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    write_file_bytes(path, to_json_string(value).as_bytes())
}

/// Plot CSV for a distribution report: `d,D` with the bin lower edge as d.
pub fn distribution_plot_csv(report: &DistributionReport) -> String {
    let mut out = String::from("d,D\n");
    for bin in &report.bins {
        let _ = writeln!(out, "{},{}", 1u64 << bin.i, bin.differential);
    }
    out
}

/// Plot CSV for a correlation report: measured fractions next to all three
/// fitted models evaluated at each window time.
pub fn correlation_plot_csv(report: &CorrelationReport) -> String {
    let mut out = String::from("t,fraction,model_mc,model_cauchy,model_gauss\n");
    let f = &report.fits;
    for p in &report.points {
        let mc = f.modified_cauchy.peak
            * modified_cauchy(p.t, report.t0, f.modified_cauchy.alpha, f.modified_cauchy.beta);
        let ca = f.cauchy.peak * cauchy_model(p.t, report.t0, f.cauchy.gamma);
        let ga = f.gaussian.peak * gaussian_model(p.t, report.t0, f.gaussian.sigma);
        let _ = writeln!(out, "{},{},{mc},{ca},{ga}", p.t, p.fraction);
    }
    out
}

/// Convert any recognized result JSON into its plot CSV.
pub fn plot_csv_from_json(text: &str) -> Result<String, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::data(format!("input is not JSON: {e}")))?;
    if value.get("bins").is_some() {
        let report: DistributionReport = serde_json::from_value(value)
            .map_err(|e| CliError::data(format!("malformed distribution result: {e}")))?;
        Ok(distribution_plot_csv(&report))
    } else if value.get("points").is_some() && value.get("fits").is_some() {
        let report: CorrelationReport = serde_json::from_value(value)
            .map_err(|e| CliError::data(format!("malformed correlation result: {e}")))?;
        Ok(correlation_plot_csv(&report))
    } else {
        Err(CliError::usage(
            "unrecognized result file: expected a distribution (bins) or correlation (points + fits) report",
        ))
    }
}
