//! Binary logarithmic binning, probability views, and Zipf-Mandelbrot
//! modeling of heavy-tailed degree data.
//!
//! Degree histograms are pooled into half-open bins [2^i, 2^{i+1}) so that
//! distributions from different windows can be compared on a common axis.
//! The binned views are the probability p per bin, the cumulative
//! probability P, and the differential cumulative probability D (the P
//! increment per bin, which at binned granularity equals p).
//!
//! The Zipf-Mandelbrot model p(d) ∝ 1/(d + δ)^α is fit by grid search in
//! log₁₀ space after pooling the model into the same binary bins as the
//! data, which removes binning bias from the objective.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use libm::{log10, pow};
use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;

use crate::degree::DegreeVector;
use crate::error::{Error, Result};
use crate::rng::uniform_f64;

/// Degree histogram pooled into binary logarithmic bins. Bin `i` covers
/// degrees in [2^i, 2^{i+1}); bins run contiguously from i = 0 through
/// floor(log₂ d_max), including interior zero-count bins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinnedDistribution {
    counts: Vec<u64>,
    total: u64,
    d_max: u64,
}

/// Per-bin probability views of a [`BinnedDistribution`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityViews {
    /// p[i]: fraction of vertices in bin i.
    pub p: Vec<f64>,
    /// P[i]: cumulative probability through bin i; nondecreasing, ends at 1.
    pub cumulative: Vec<f64>,
    /// D[i] = P[i] − P[i−1]: the differential cumulative probability.
    pub differential: Vec<f64>,
}

impl BinnedDistribution {
    /// Pool a degree vector into binary bins. Degrees must all be ≥ 1; a
    /// zero degree means upstream data is corrupt.
    pub fn from_degrees(degrees: &DegreeVector) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Usage("cannot bin an empty degree vector".into()));
        }
        let mut d_max: u64 = 0;
        for (idx, d) in degrees.iter() {
            if d == 0 {
                return Err(Error::DataQuality(format!(
                    "zero degree for vertex {idx}; degree data is corrupt"
                )));
            }
            d_max = d_max.max(d);
        }
        let mut counts = vec![0u64; d_max.ilog2() as usize + 1];
        for (_, d) in degrees.iter() {
            counts[d.ilog2() as usize] += 1;
        }
        Ok(Self {
            counts,
            total: degrees.len() as u64,
            d_max,
        })
    }

    /// Adopt explicit per-bin counts. `counts[i]` is the number of vertices
    /// with degree in [2^i, 2^{i+1}); `d_max` is the largest observed degree
    /// and must land in the final bin, which must be nonzero.
    pub fn from_counts(counts: Vec<u64>, d_max: u64) -> Result<Self> {
        if d_max == 0 || counts.is_empty() {
            return Err(Error::Usage(
                "binned distribution needs d_max >= 1 and at least one bin".into(),
            ));
        }
        if counts.len() != d_max.ilog2() as usize + 1 {
            return Err(Error::Usage(format!(
                "expected {} contiguous bins for d_max = {d_max}, got {}",
                d_max.ilog2() + 1,
                counts.len()
            )));
        }
        if *counts.last().expect("nonempty") == 0 {
            return Err(Error::Usage(
                "final bin is empty but must contain d_max".into(),
            ));
        }
        let mut total: u64 = 0;
        for &c in &counts {
            total = total.checked_add(c).ok_or(Error::CountOverflow)?;
        }
        Ok(Self {
            counts,
            total,
            d_max,
        })
    }

    /// Per-bin vertex counts, indexed by bin exponent.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Bin lower-edge exponents: 0..num_bins.
    pub fn exponents(&self) -> core::ops::Range<u32> {
        0..self.num_bins() as u32
    }

    pub fn num_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn nonzero_bins(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }

    /// Total vertices binned.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// Largest observed degree.
    pub fn d_max(&self) -> u64 {
        self.d_max
    }

    /// Largest degree covered by the bins: 2^num_bins − 1.
    pub fn support_max(&self) -> u64 {
        if self.num_bins() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.num_bins()) - 1
        }
    }

    /// Compute the p, P, and D views. D is computed as the increment of P,
    /// which reproduces p exactly up to floating-point granularity.
    pub fn probability_views(&self) -> Result<ProbabilityViews> {
        if self.total == 0 {
            return Err(Error::Usage(
                "probability views need a nonzero vertex total".into(),
            ));
        }
        let total = self.total as f64;
        let p: Vec<f64> = self.counts.iter().map(|&c| c as f64 / total).collect();
        let mut cumulative = Vec::with_capacity(p.len());
        let mut acc = 0.0f64;
        for &x in &p {
            acc += x;
            cumulative.push(acc);
        }
        let mut differential = Vec::with_capacity(p.len());
        let mut prev = 0.0f64;
        for &c in &cumulative {
            differential.push(c - prev);
            prev = c;
        }
        Ok(ProbabilityViews {
            p,
            cumulative,
            differential,
        })
    }
}

/// Pool a degree vector into binary logarithmic bins.
pub fn bin_degrees(degrees: &DegreeVector) -> Result<BinnedDistribution> {
    BinnedDistribution::from_degrees(degrees)
}

/// A fitted Zipf-Mandelbrot model p(d) ∝ 1/(d + delta)^alpha.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZipfMandelbrotFit {
    /// Exponent α > 0.
    pub alpha: f64,
    /// Offset δ ≥ 0.
    pub delta: f64,
    /// Fit objective at the returned parameters.
    pub residual: f64,
    /// 1/Z: the constant making (d + δ)^−α a probability over the binned
    /// support.
    pub normalizer: f64,
}

/// Offset grid for the fit. The offset acts as a small shift of the power
/// law's origin, so a coarse geometric grid is enough; the exponent grid is
/// fine. Both are tunables.
pub const ZM_DELTA_GRID: [f64; 8] = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0];

/// Exponent grid: 0.10 through 4.00 in steps of 0.01.
pub fn zm_alpha_grid() -> impl Iterator<Item = f64> {
    (10..=400).map(|h| h as f64 / 100.0)
}

// Power sums Σ (d + δ)^−α are evaluated directly for narrow ranges and with
// an Euler-Maclaurin tail for wide ones, keeping the full fit grid cheap.
// The head length keeps the expansion's remainder far below f64 granularity
// for every α in the fit grid.
const EM_HEAD: u64 = 64;
const DIRECT_WIDTH: u64 = 128;

fn zm_params_ok(alpha: f64, delta: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Usage(format!(
            "Zipf-Mandelbrot exponent must be positive and finite, got {alpha}"
        )));
    }
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::Usage(format!(
            "Zipf-Mandelbrot offset must be nonnegative and finite, got {delta}"
        )));
    }
    Ok(())
}

/// Σ_{d=lo..=hi} (d + delta)^−alpha for integer degrees lo ≤ d ≤ hi.
///
/// Exact summation for ranges up to 128 wide; wider ranges sum a 64-term
/// head directly and close the tail with an Euler-Maclaurin expansion
/// through the B₄ term, accurate to well under 1e-12 relative error.
pub fn zm_weight_sum(alpha: f64, delta: f64, lo: u64, hi: u64) -> f64 {
    debug_assert!(lo >= 1 && lo <= hi);
    let width = hi - lo + 1;
    if width <= DIRECT_WIDTH {
        return direct_weight_sum(alpha, delta, lo, hi);
    }
    let head_hi = lo + EM_HEAD - 1;
    direct_weight_sum(alpha, delta, lo, head_hi) + euler_maclaurin_tail(alpha, delta, head_hi + 1, hi)
}

fn direct_weight_sum(alpha: f64, delta: f64, lo: u64, hi: u64) -> f64 {
    // Smallest terms first for accumulation accuracy.
    let mut sum = 0.0f64;
    let mut d = hi;
    loop {
        sum += pow(d as f64 + delta, -alpha);
        if d == lo {
            break;
        }
        d -= 1;
    }
    sum
}

/// Σ_{k=a..=b} f(k) with f(x) = (x + δ)^−α via Euler-Maclaurin:
/// ∫f + (f(a)+f(b))/2 + (f′(b)−f′(a))/12 − (f‴(b)−f‴(a))/720.
fn euler_maclaurin_tail(alpha: f64, delta: f64, a: u64, b: u64) -> f64 {
    let xa = a as f64 + delta;
    let xb = b as f64 + delta;
    let fa = pow(xa, -alpha);
    let fb = pow(xb, -alpha);
    let integral = if alpha == 1.0 {
        libm::log(xb / xa)
    } else {
        (pow(xb, 1.0 - alpha) - pow(xa, 1.0 - alpha)) / (1.0 - alpha)
    };
    let d1 = |x: f64| -alpha * pow(x, -alpha - 1.0);
    let d3 = |x: f64| -alpha * (alpha + 1.0) * (alpha + 2.0) * pow(x, -alpha - 3.0);
    integral + 0.5 * (fa + fb) + (d1(xb) - d1(xa)) / 12.0 - (d3(xb) - d3(xa)) / 720.0
}

/// Zipf-Mandelbrot probability of degree `d` over support 1..=support_max:
/// (d + δ)^−α / Σ_{k=1..support_max} (k + δ)^−α.
pub fn zm_pdf(d: u64, alpha: f64, delta: f64, support_max: u64) -> Result<f64> {
    zm_params_ok(alpha, delta)?;
    if support_max < 1 {
        return Err(Error::Usage("support_max must be at least 1".into()));
    }
    if d < 1 || d > support_max {
        return Err(Error::Usage(format!(
            "degree {d} outside model support [1, {support_max}]"
        )));
    }
    Ok(pow(d as f64 + delta, -alpha) / zm_weight_sum(alpha, delta, 1, support_max))
}

fn bin_edges(i: u32) -> (u64, u64) {
    let lo = 1u64 << i;
    let hi = if i >= 63 { u64::MAX } else { (1u64 << (i + 1)) - 1 };
    (lo, hi)
}

fn pooled_masses_unchecked(alpha: f64, delta: f64, num_bins: u32) -> Vec<f64> {
    let weights: Vec<f64> = (0..num_bins)
        .map(|i| {
            let (lo, hi) = bin_edges(i);
            zm_weight_sum(alpha, delta, lo, hi)
        })
        .collect();
    let z: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / z).collect()
}

/// Model probability mass pooled into each binary bin 0..num_bins,
/// normalized over the bins' combined support [1, 2^num_bins − 1].
pub fn zm_pooled_bin_masses(alpha: f64, delta: f64, num_bins: u32) -> Result<Vec<f64>> {
    zm_params_ok(alpha, delta)?;
    if num_bins == 0 || num_bins > 63 {
        return Err(Error::Usage(format!(
            "num_bins must be in 1..=63, got {num_bins}"
        )));
    }
    Ok(pooled_masses_unchecked(alpha, delta, num_bins))
}

/// Fit objective for one parameter pair: the sum over nonzero bins of the
/// squared log₁₀ gap between pooled model mass and the data's D view.
pub fn zm_fit_residual(b: &BinnedDistribution, alpha: f64, delta: f64) -> Result<f64> {
    zm_params_ok(alpha, delta)?;
    let views = b.probability_views()?;
    let masses = pooled_masses_unchecked(alpha, delta, b.num_bins() as u32);
    let mut residual = 0.0f64;
    for (i, &count) in b.counts().iter().enumerate() {
        if count == 0 {
            continue; // log of an empty bin is undefined; excluded from the objective
        }
        let err = log10(masses[i]) - log10(views.differential[i]);
        residual += err * err;
    }
    Ok(residual)
}

/// Grid-search the Zipf-Mandelbrot parameters minimizing
/// [`zm_fit_residual`]. Ties prefer smaller α, then smaller δ. Needs at
/// least 3 nonzero bins; fewer leave the two-parameter fit underdetermined.
pub fn fit_zipf_mandelbrot(b: &BinnedDistribution) -> Result<ZipfMandelbrotFit> {
    if b.nonzero_bins() < 3 {
        return Err(Error::Usage(format!(
            "Zipf-Mandelbrot fit needs at least 3 nonzero bins, got {}",
            b.nonzero_bins()
        )));
    }
    let mut best: Option<(f64, f64, f64)> = None;
    for alpha in zm_alpha_grid() {
        for delta in ZM_DELTA_GRID {
            let residual = zm_fit_residual(b, alpha, delta)?;
            if best.map_or(true, |(_, _, r)| residual < r) {
                best = Some((alpha, delta, residual));
            }
        }
    }
    let (alpha, delta, residual) = best.expect("grid is nonempty");
    let normalizer = 1.0 / zm_weight_sum(alpha, delta, 1, b.support_max());
    Ok(ZipfMandelbrotFit {
        alpha,
        delta,
        residual,
        normalizer,
    })
}

// Memory guard for the sampler's cumulative table (512 MiB of f64).
const SAMPLE_SUPPORT_CAP: u64 = 1 << 26;

/// Draw `n` degrees from the Zipf-Mandelbrot distribution by inverse CDF
/// over the finite support, as a degree vector keyed by vertex 0..n.
/// Deterministic for a fixed seed.
pub fn sample_zipf_mandelbrot(
    alpha: f64,
    delta: f64,
    support_max: u64,
    n: u64,
    seed: u64,
) -> Result<DegreeVector> {
    zm_params_ok(alpha, delta)?;
    if support_max < 1 || support_max > SAMPLE_SUPPORT_CAP {
        return Err(Error::Usage(format!(
            "sampler support must be in 1..={SAMPLE_SUPPORT_CAP}, got {support_max}"
        )));
    }
    if n < 1 || n > u32::MAX as u64 {
        return Err(Error::Usage(format!(
            "sample count must be in 1..={}, got {n}",
            u32::MAX
        )));
    }
    let mut cdf = Vec::with_capacity(support_max as usize);
    let mut acc = 0.0f64;
    for d in 1..=support_max {
        acc += pow(d as f64 + delta, -alpha);
        cdf.push(acc);
    }
    let total = acc;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(n as usize);
    for vertex in 0..n as u32 {
        let u = uniform_f64(&mut rng) * total;
        let idx = cdf.partition_point(|&c| c <= u);
        let degree = (idx as u64 + 1).min(support_max);
        pairs.push((vertex, degree));
    }
    DegreeVector::from_pairs(pairs)
}
