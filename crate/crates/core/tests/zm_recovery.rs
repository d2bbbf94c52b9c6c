//! Zipf-Mandelbrot fit recovery against model-generated and sampled data.

use darkscope_core::distributions::{
    bin_degrees, fit_zipf_mandelbrot, sample_zipf_mandelbrot, zm_alpha_grid, zm_fit_residual,
    zm_pdf, zm_pooled_bin_masses, BinnedDistribution, ZM_DELTA_GRID,
};

/// Counts proportional to the pooled model, scaled so rounding error sits
/// far below the fit's noise floor.
fn noiseless_counts(alpha: f64, delta: f64, num_bins: u32) -> BinnedDistribution {
    let masses = zm_pooled_bin_masses(alpha, delta, num_bins).unwrap();
    let scale = 1e12f64;
    let counts: Vec<u64> = masses.iter().map(|m| (m * scale).round() as u64).collect();
    assert!(counts.iter().all(|&c| c > 0), "every bin must stay populated");
    let d_max = (1u64 << num_bins) - 1;
    BinnedDistribution::from_counts(counts, d_max).unwrap()
}

#[test]
fn noiseless_model_data_recovers_grid_exact_parameters() {
    let b = noiseless_counts(2.0, 1.0, 18);
    let fit = fit_zipf_mandelbrot(&b).unwrap();
    assert_eq!(fit.alpha, 2.0, "alpha must land on the exact grid point");
    assert_eq!(fit.delta, 1.0, "delta must land on the exact grid point");
    assert!(
        fit.residual < 1e-9,
        "noiseless residual {:.3e} above 1e-9",
        fit.residual
    );
    assert!(fit.normalizer > 0.0);
}

#[test]
fn pure_zipf_data_prefers_the_zero_offset_branch() {
    let b = noiseless_counts(1.0, 0.0, 12);
    let fit = fit_zipf_mandelbrot(&b).unwrap();
    assert_eq!(fit.alpha, 1.0);
    assert_eq!(fit.delta, 0.0);
    assert!(fit.residual < 1e-9);
}

#[test]
fn fit_is_the_exhaustive_grid_argmin() {
    // Mildly noisy data so the argmin is nontrivial, then re-scan the whole
    // grid and confirm nothing beats the returned parameters.
    let degrees = sample_zipf_mandelbrot(1.4, 2.0, 1 << 14, 50_000, 99).unwrap();
    let b = bin_degrees(&degrees).unwrap();
    let fit = fit_zipf_mandelbrot(&b).unwrap();

    let mut best_seen = f64::INFINITY;
    for alpha in zm_alpha_grid() {
        for delta in ZM_DELTA_GRID {
            let r = zm_fit_residual(&b, alpha, delta).unwrap();
            best_seen = best_seen.min(r);
            assert!(
                fit.residual <= r,
                "grid point (alpha={alpha}, delta={delta}) residual {r} beats fit {}",
                fit.residual
            );
        }
    }
    assert_eq!(fit.residual, best_seen);
    assert_eq!(zm_fit_residual(&b, fit.alpha, fit.delta).unwrap(), fit.residual);
}

#[test]
fn million_sample_draw_recovers_alpha() {
    let degrees = sample_zipf_mandelbrot(2.0, 1.0, 1 << 20, 1_000_000, 20260811).unwrap();
    assert_eq!(degrees.len(), 1_000_000);
    let b = bin_degrees(&degrees).unwrap();
    let fit = fit_zipf_mandelbrot(&b).unwrap();
    assert!(
        (fit.alpha - 2.0).abs() <= 0.15,
        "recovered alpha {} outside 2.0 +/- 0.15",
        fit.alpha
    );
}

#[test]
fn binned_samples_match_unbinned_histogram_oracle() {
    let degrees = sample_zipf_mandelbrot(2.0, 1.0, 1 << 12, 100_000, 7).unwrap();

    // Oracle: histogram every degree value directly, then pool by exponent.
    let mut per_degree = std::collections::BTreeMap::<u64, u64>::new();
    for (_, d) in degrees.iter() {
        *per_degree.entry(d).or_default() += 1;
    }
    let d_max = *per_degree.keys().max().unwrap();
    let mut pooled = vec![0u64; d_max.ilog2() as usize + 1];
    for (&d, &n) in &per_degree {
        pooled[d.ilog2() as usize] += n;
    }

    let b = bin_degrees(&degrees).unwrap();
    assert_eq!(b.counts(), &pooled[..]);
    assert_eq!(b.total(), 100_000);
    assert_eq!(b.d_max(), d_max);
}

#[test]
fn empirical_head_probability_matches_pdf() {
    let n = 1_000_000u64;
    let degrees = sample_zipf_mandelbrot(2.0, 1.0, 1 << 20, n, 11).unwrap();
    let ones = degrees.iter().filter(|&(_, d)| d == 1).count() as f64 / n as f64;
    let p1 = zm_pdf(1, 2.0, 1.0, 1 << 20).unwrap();
    // Frozen from the model: p(1) = 0.25 / sum((k+1)^-2) over the support.
    assert!((p1 - 0.38765).abs() < 1e-4, "pdf head moved: {p1}");
    assert!(
        (ones - p1).abs() < 0.01,
        "empirical p(1) = {ones} vs model {p1}"
    );
}
