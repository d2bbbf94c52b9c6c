//! Cross-site source-set overlap and its temporal decay.
//!
//! A telescope window contributes a set of sources with per-source packet
//! counts (brightness); an outpost window contributes the set of sources it
//! observed. Overlap is measured per binary brightness bin, either for one
//! coeval window or as a curve over many windows, and the curves are fit to
//! modified-Cauchy, Cauchy, and Gaussian decay models by grid search under
//! a robust Σ|residual|^½ objective.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use libm::{exp, fabs, log2, pow, sqrt};

use crate::degree::DegreeVector;
use crate::error::{Error, Result};
use crate::timecoord;

/// Sources observed in one telescope window, keyed by identifier with their
/// packet counts. The space tag names the identifier space (raw, anonymized
/// scheme, ...) so that sets from different spaces cannot be intersected by
/// accident.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceSet<K: Ord = u32> {
    window_label: String,
    space: String,
    sources: BTreeMap<K, u64>,
}

impl<K: Ord> SourceSet<K> {
    /// Build from (identifier, packet count) pairs; duplicate identifiers
    /// sum. Counts must be ≥ 1 and the window label nonempty.
    pub fn new<I>(window_label: impl Into<String>, space: impl Into<String>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (K, u64)>,
    {
        let window_label = window_label.into();
        if window_label.is_empty() {
            return Err(Error::Usage("source set needs a nonempty window label".into()));
        }
        let mut sources: BTreeMap<K, u64> = BTreeMap::new();
        for (key, count) in pairs {
            if count == 0 {
                return Err(Error::Usage(
                    "source set counts must be >= 1; omit unseen sources".into(),
                ));
            }
            let slot = sources.entry(key).or_default();
            *slot = slot.checked_add(count).ok_or(Error::CountOverflow)?;
        }
        Ok(Self {
            window_label,
            space: space.into(),
            sources,
        })
    }

    pub fn window_label(&self) -> &str {
        &self.window_label
    }

    pub fn space(&self) -> &str {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    pub fn get(&self, key: &K) -> u64 {
        self.sources.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, u64)> + '_ {
        self.sources.iter().map(|(k, &v)| (k, v))
    }

    /// Sources whose brightness falls in [2^exponent, 2^{exponent+1}).
    pub fn bin_members(&self, exponent: u32) -> impl Iterator<Item = &K> + '_ {
        self.sources
            .iter()
            .filter(move |(_, &d)| d.ilog2() == exponent)
            .map(|(k, _)| k)
    }
}

impl SourceSet<u32> {
    /// Adopt a degree vector (e.g. per-source packets of a window matrix).
    pub fn from_degree_vector(
        window_label: impl Into<String>,
        space: impl Into<String>,
        degrees: &DegreeVector,
    ) -> Result<Self> {
        Self::new(window_label, space, degrees.iter())
    }
}

/// The set of sources one outpost window observed, positioned at month
/// coordinate `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutpostWindow<K: Ord = u32> {
    pub label: String,
    pub t: f64,
    pub space: String,
    pub sources: BTreeSet<K>,
}

/// Overlap of one brightness bin with one outpost window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrightnessOverlap {
    /// Bin exponent i: brightness in [2^i, 2^{i+1}).
    pub exponent: u32,
    pub fraction: f64,
    pub matched: u64,
    pub eligible: u64,
}

fn check_spaces(a: &str, b: &str) -> Result<()> {
    if a != b {
        return Err(Error::Usage(format!(
            "identifier-space mismatch: {a:?} vs {b:?}"
        )));
    }
    Ok(())
}

/// Fraction of telescope sources per brightness bin that also appear in the
/// outpost window. Bins with no eligible sources are omitted rather than
/// emitted as 0/0.
pub fn overlap_by_brightness<K: Ord>(
    telescope: &SourceSet<K>,
    outpost: &OutpostWindow<K>,
) -> Result<Vec<BrightnessOverlap>> {
    check_spaces(telescope.space(), &outpost.space)?;
    let mut bins: BTreeMap<u32, (u64, u64)> = BTreeMap::new(); // exponent -> (matched, eligible)
    for (key, brightness) in telescope.iter() {
        let slot = bins.entry(brightness.ilog2()).or_insert((0, 0));
        slot.1 += 1;
        if outpost.sources.contains(key) {
            slot.0 += 1;
        }
    }
    Ok(bins
        .into_iter()
        .map(|(exponent, (matched, eligible))| BrightnessOverlap {
            exponent,
            fraction: matched as f64 / eligible as f64,
            matched,
            eligible,
        })
        .collect())
}

/// Empirical probability that a telescope source of brightness `d` is seen
/// coevally at an outpost: min(1, log₂(d) / log₂(√n_valid)). Reaches 1 at
/// d = √n_valid and stays there.
pub fn brightness_law(d: u64, n_valid: u64) -> Result<f64> {
    if d < 1 {
        return Err(Error::Usage("brightness must be >= 1".into()));
    }
    if n_valid < 4 {
        return Err(Error::Usage(format!(
            "window size must be >= 4 for the brightness law, got {n_valid}"
        )));
    }
    let p = log2(d as f64) / (0.5 * log2(n_valid as f64));
    Ok(if p > 1.0 { 1.0 } else { p })
}

/// One measured point of a temporal correlation curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub t: f64,
    pub fraction: f64,
    pub matched: u64,
    pub eligible: u64,
}

/// Per-window overlap fractions for one brightness bin, ordered by time.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationCurve {
    /// Month coordinate t₀ of the telescope window.
    pub reference_time: f64,
    /// Brightness bin exponent i: sources with d in [2^i, 2^{i+1}).
    pub brightness_exponent: u32,
    pub points: Vec<CurvePoint>,
}

/// Measure the overlap of one telescope brightness bin against a sequence
/// of outpost windows. The reference time comes from the telescope's window
/// label ("YYYY-MM" or "YYYY-MM-DD").
pub fn temporal_curve<K: Ord>(
    telescope: &SourceSet<K>,
    brightness_exponent: u32,
    outposts: &[OutpostWindow<K>],
) -> Result<CorrelationCurve> {
    if outposts.is_empty() {
        return Err(Error::Usage("temporal curve needs at least one outpost window".into()));
    }
    let reference_time = timecoord::parse_label(telescope.window_label()).map_err(|_| {
        Error::Usage(format!(
            "telescope window label {:?} is not a YYYY-MM or YYYY-MM-DD time label",
            telescope.window_label()
        ))
    })?;
    let members: Vec<&K> = telescope.bin_members(brightness_exponent).collect();
    if members.is_empty() {
        return Err(Error::Usage(format!(
            "no telescope sources in brightness bin {brightness_exponent} \
             [2^{brightness_exponent}, 2^{})",
            brightness_exponent + 1
        )));
    }
    let eligible = members.len() as u64;
    let mut points = Vec::with_capacity(outposts.len());
    for window in outposts {
        check_spaces(telescope.space(), &window.space)?;
        let matched = members.iter().filter(|k| window.sources.contains(*k)).count() as u64;
        points.push(CurvePoint {
            t: window.t,
            fraction: matched as f64 / eligible as f64,
            matched,
            eligible,
        });
    }
    points.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(CorrelationCurve {
        reference_time,
        brightness_exponent,
        points,
    })
}

/// Modified Cauchy decay β/(β + |t − t₀|^α): 1 at the peak, falling toward
/// zero with scale β and shape α. α = 2, β = γ² recovers the standard
/// Cauchy form.
pub fn modified_cauchy(t: f64, t0: f64, alpha: f64, beta: f64) -> f64 {
    debug_assert!(alpha > 0.0 && beta > 0.0);
    beta / (beta + pow(fabs(t - t0), alpha))
}

/// Peak-normalized Cauchy γ²/(γ² + (t − t₀)²).
pub fn cauchy_model(t: f64, t0: f64, gamma: f64) -> f64 {
    debug_assert!(gamma > 0.0);
    let g2 = gamma * gamma;
    g2 / (g2 + (t - t0) * (t - t0))
}

/// Peak-normalized Gaussian exp(−(t − t₀)²/2σ²).
pub fn gaussian_model(t: f64, t0: f64, sigma: f64) -> f64 {
    debug_assert!(sigma > 0.0);
    let z = (t - t0) / sigma;
    exp(-0.5 * z * z)
}

/// Robust fit objective: Σ over points of |fraction − model(t)|^½. The ½
/// power keeps single outlier windows from dominating the fit.
pub fn fit_objective(points: &[CurvePoint], model: impl Fn(f64) -> f64) -> f64 {
    points
        .iter()
        .map(|p| sqrt(fabs(p.fraction - model(p.t))))
        .sum()
}

/// Fitted modified-Cauchy decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifiedCauchyFit {
    pub alpha: f64,
    pub beta: f64,
    /// Peak normalization: the largest observed fraction.
    pub peak: f64,
    pub residual: f64,
    /// Relative drop one month from the peak: 1/(β + 1).
    pub one_month_drop: f64,
}

/// Fitted standard Cauchy decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyFit {
    pub gamma: f64,
    pub peak: f64,
    pub residual: f64,
}

/// Fitted Gaussian decay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianFit {
    pub sigma: f64,
    pub peak: f64,
    pub residual: f64,
}

/// Exponent grid for the modified-Cauchy fit: 0.25..=3.00 step 0.05.
pub fn mc_alpha_grid() -> impl Iterator<Item = f64> {
    (25..=300).step_by(5).map(|h| h as f64 / 100.0)
}

/// Scale grid for β (and for the Cauchy γ and Gaussian σ fits):
/// 0.25..=16.00 step 0.25.
pub fn scale_grid() -> impl Iterator<Item = f64> {
    (25..=1600).step_by(25).map(|h| h as f64 / 100.0)
}

/// Grid bounds bracket the decays seen in practice (α near 1, one-month
/// drops of 0.2..0.5 ⇒ β of 1..4) with generous margins; step sizes trade
/// fit resolution against exhaustive re-scan cost in tests.
fn fit_peak(curve: &CorrelationCurve) -> Result<f64> {
    if curve.points.len() < 3 {
        return Err(Error::Usage(format!(
            "curve fit needs at least 3 points, got {}",
            curve.points.len()
        )));
    }
    let peak = curve
        .points
        .iter()
        .map(|p| p.fraction)
        .fold(0.0f64, f64::max);
    if peak <= 0.0 {
        return Err(Error::DegenerateFit(
            "all-zero correlation curve has no peak to normalize against".into(),
        ));
    }
    Ok(peak)
}

/// Grid-search the modified-Cauchy parameters minimizing the Σ|·|^½
/// objective against the peak-normalized model. Ties prefer smaller α,
/// then smaller β.
pub fn fit_modified_cauchy(curve: &CorrelationCurve) -> Result<ModifiedCauchyFit> {
    let peak = fit_peak(curve)?;
    let t0 = curve.reference_time;
    let mut best: Option<(f64, f64, f64)> = None;
    for alpha in mc_alpha_grid() {
        for beta in scale_grid() {
            let residual =
                fit_objective(&curve.points, |t| peak * modified_cauchy(t, t0, alpha, beta));
            if best.map_or(true, |(_, _, r)| residual < r) {
                best = Some((alpha, beta, residual));
            }
        }
    }
    let (alpha, beta, residual) = best.expect("grid is nonempty");
    Ok(ModifiedCauchyFit {
        alpha,
        beta,
        peak,
        residual,
        one_month_drop: 1.0 / (beta + 1.0),
    })
}

/// Grid-search the Cauchy width under the same objective and peak
/// normalization, so residuals are comparable across the three models.
pub fn fit_cauchy(curve: &CorrelationCurve) -> Result<CauchyFit> {
    let peak = fit_peak(curve)?;
    let t0 = curve.reference_time;
    let mut best: Option<(f64, f64)> = None;
    for gamma in scale_grid() {
        let residual = fit_objective(&curve.points, |t| peak * cauchy_model(t, t0, gamma));
        if best.map_or(true, |(_, r)| residual < r) {
            best = Some((gamma, residual));
        }
    }
    let (gamma, residual) = best.expect("grid is nonempty");
    Ok(CauchyFit {
        gamma,
        peak,
        residual,
    })
}

/// Grid-search the Gaussian width under the same objective and peak
/// normalization.
pub fn fit_gaussian(curve: &CorrelationCurve) -> Result<GaussianFit> {
    let peak = fit_peak(curve)?;
    let t0 = curve.reference_time;
    let mut best: Option<(f64, f64)> = None;
    for sigma in scale_grid() {
        let residual = fit_objective(&curve.points, |t| peak * gaussian_model(t, t0, sigma));
        if best.map_or(true, |(_, r)| residual < r) {
            best = Some((sigma, residual));
        }
    }
    let (sigma, residual) = best.expect("grid is nonempty");
    Ok(GaussianFit {
        sigma,
        peak,
        residual,
    })
}
