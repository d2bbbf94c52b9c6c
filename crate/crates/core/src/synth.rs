//! Synthetic two-site data generator.
//!
//! Stands in for the non-public telescope/outpost corpora: source
//! brightness follows a Zipf-Mandelbrot draw, a telescope capture sees
//! every source's packets, and each monthly outpost window re-observes a
//! source with probability (brightness share law) × (modified-Cauchy drift
//! in time). The generative parameters ride along as ground truth so
//! recovery can be checked end to end.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use libm::pow;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::addr::Cidr;
use crate::correlation::{brightness_law, modified_cauchy, OutpostWindow, SourceSet};
use crate::error::{Error, Result};
use crate::rng::{shuffle, uniform_f64};
use crate::timecoord;
use crate::window::PacketRecord;

/// Identifier space tag carried by everything the generator emits.
pub const SYNTH_SPACE: &str = "synthetic";

/// How a telescope source's brightness drives its chance of appearing in a
/// coeval outpost window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShareLaw {
    /// min(1, log₂(d) / log₂(√n_valid)): bright sources are near-certain.
    Brightness,
    /// A flat base rate independent of brightness.
    Constant(f64),
}

/// Generator configuration; all fields are recorded in the ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub n_sources: u32,
    pub zm_alpha: f64,
    pub zm_delta: f64,
    /// Brightness support: degrees drawn from [1, zm_support_max].
    pub zm_support_max: u64,
    /// Scaling constant of the brightness law (the paper-scale window
    /// size), independent of how many packets are actually emitted.
    pub n_valid: u64,
    pub months: u32,
    pub start_year: i32,
    pub start_month: u32,
    /// Telescope capture date, "YYYY-MM-DD"; must parse as a time label.
    pub capture_label: String,
    pub drift_alpha: f64,
    pub drift_beta: f64,
    pub share_law: ShareLaw,
    /// Internal (telescope) address block; sources are drawn outside it,
    /// destinations inside it.
    pub internal: Cidr,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            n_sources: 100_000,
            zm_alpha: 2.0,
            zm_delta: 1.0,
            zm_support_max: 1 << 17,
            n_valid: 1 << 30,
            months: 15,
            start_year: 2020,
            start_month: 1,
            capture_label: String::from("2020-06-17"),
            drift_alpha: 1.0,
            drift_beta: 4.0,
            share_law: ShareLaw::Brightness,
            internal: Cidr::new(0x0A00_0000, 8).expect("valid prefix"),
            seed: 1,
        }
    }
}

/// Everything needed to check recovered fits against the generator.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundTruth {
    pub config: SynthConfig,
    /// Month coordinate of the telescope capture.
    pub t0: f64,
    pub month_labels: Vec<String>,
    pub month_coords: Vec<f64>,
}

/// Generator output: the telescope view (as both a source set and a packet
/// stream), the monthly outpost windows, and the ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthOutput {
    pub telescope: SourceSet<u32>,
    pub packets: Vec<PacketRecord>,
    pub outposts: Vec<OutpostWindow<u32>>,
    pub ground_truth: GroundTruth,
}

fn validate(config: &SynthConfig) -> Result<f64> {
    if config.n_sources == 0 {
        return Err(Error::Usage("n_sources must be at least 1".into()));
    }
    if config.months < 3 {
        return Err(Error::Usage(format_months(config.months)));
    }
    if !(config.zm_alpha > 0.0) || !(config.zm_delta >= 0.0) {
        return Err(Error::Usage("invalid Zipf-Mandelbrot parameters".into()));
    }
    if config.zm_support_max < 1 || config.zm_support_max > (1 << 26) {
        return Err(Error::Usage("zm_support_max must be in 1..=2^26".into()));
    }
    if config.n_valid < 4 {
        return Err(Error::Usage("n_valid must be >= 4".into()));
    }
    if !(config.drift_alpha > 0.0) || !(config.drift_beta > 0.0) {
        return Err(Error::Usage("drift parameters must be positive".into()));
    }
    if let ShareLaw::Constant(rate) = config.share_law {
        if !(0.0..=1.0).contains(&rate) {
            return Err(Error::Usage("constant share rate must be in [0, 1]".into()));
        }
    }
    if !(1..=12).contains(&config.start_month) {
        return Err(Error::Usage("start_month must be 1..=12".into()));
    }
    if config.internal.prefix_len() == 0 {
        return Err(Error::Usage(
            "internal block must leave external address space for sources".into(),
        ));
    }
    timecoord::parse_label(&config.capture_label)
}

fn share_probability(law: ShareLaw, brightness: u64, n_valid: u64) -> Result<f64> {
    match law {
        ShareLaw::Brightness => brightness_law(brightness, n_valid),
        ShareLaw::Constant(rate) => Ok(rate),
    }
}

fn format_months(months: u32) -> String {
    use alloc::format;
    format!("months must be at least 3, got {months}")
}

/// Run the generator. Deterministic for a fixed config (including seed).
pub fn synth_two_site(config: &SynthConfig) -> Result<SynthOutput> {
    let t0 = validate(config)?;
    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);

    // Distinct external source addresses.
    let mut sources: BTreeSet<u32> = BTreeSet::new();
    while sources.len() < config.n_sources as usize {
        let addr = rng.next_u32();
        if !config.internal.contains(addr) {
            sources.insert(addr);
        }
    }

    // Brightness per source by inverse CDF over the finite support.
    let mut cdf = Vec::with_capacity(config.zm_support_max as usize);
    let mut acc = 0.0f64;
    for d in 1..=config.zm_support_max {
        acc += pow(d as f64 + config.zm_delta, -config.zm_alpha);
        cdf.push(acc);
    }
    let total_weight = acc;
    let brightness: Vec<(u32, u64)> = sources
        .iter()
        .map(|&src| {
            let u = uniform_f64(&mut rng) * total_weight;
            let idx = cdf.partition_point(|&c| c <= u);
            (src, (idx as u64 + 1).min(config.zm_support_max))
        })
        .collect();

    let telescope = SourceSet::new(config.capture_label.clone(), SYNTH_SPACE, brightness.iter().copied())?;

    // Telescope packet stream: each source sends its brightness in packets
    // to internal destinations, interleaved by a global shuffle.
    let host_mask = config.internal.host_mask();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for &(src, d) in &brightness {
        for _ in 0..d {
            let dst = config.internal.base() | (rng.next_u32() & host_mask);
            pairs.push((src, dst));
        }
    }
    shuffle(&mut rng, &mut pairs);
    let packets: Vec<PacketRecord> = pairs
        .into_iter()
        .enumerate()
        .map(|(i, (src, dst))| PacketRecord {
            timestamp_us: i as u64,
            src,
            dst,
        })
        .collect();

    // Monthly outpost windows: independent per-month inclusion with
    // probability share(d) × drift(t).
    let mut outposts = Vec::with_capacity(config.months as usize);
    let mut month_labels = Vec::with_capacity(config.months as usize);
    let mut month_coords = Vec::with_capacity(config.months as usize);
    for m in 0..config.months {
        let (year, month) = timecoord::month_add(config.start_year, config.start_month, m);
        let label = timecoord::month_label(year, month);
        let t = timecoord::month_center(year, month);
        let drift = modified_cauchy(t, t0, config.drift_alpha, config.drift_beta);
        let mut seen = BTreeSet::new();
        for &(src, d) in &brightness {
            let p = share_probability(config.share_law, d, config.n_valid)? * drift;
            if uniform_f64(&mut rng) < p {
                seen.insert(src);
            }
        }
        outposts.push(OutpostWindow {
            label: label.clone(),
            t,
            space: String::from(SYNTH_SPACE),
            sources: seen,
        });
        month_labels.push(label);
        month_coords.push(t);
    }

    Ok(SynthOutput {
        telescope,
        packets,
        outposts,
        ground_truth: GroundTruth {
            config: config.clone(),
            t0,
            month_labels,
            month_coords,
        },
    })
}
