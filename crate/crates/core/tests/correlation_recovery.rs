//! Modified-Cauchy fit recovery and the temporal/overlap generative checks.

use darkscope_core::correlation::{
    cauchy_model, fit_cauchy, fit_gaussian, fit_modified_cauchy, fit_objective, gaussian_model,
    mc_alpha_grid, modified_cauchy, overlap_by_brightness, scale_grid, temporal_curve,
    CorrelationCurve, CurvePoint, OutpostWindow, SourceSet,
};
use darkscope_core::timecoord;
use rand_chacha::ChaCha20Rng;
use rand_core::SeedableRng;

fn uniform(rng: &mut ChaCha20Rng) -> f64 {
    use rand_core::RngCore;
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A noiseless modified-Cauchy curve whose fractions are exact rationals:
/// eligible = 27720 divides evenly by 4 + |t| for every offset used.
fn noiseless_mc_curve() -> CorrelationCurve {
    let eligible = 27_720u64;
    let points = (-7..=7)
        .map(|k: i64| {
            let matched = 4 * eligible / (4 + k.unsigned_abs());
            CurvePoint {
                t: k as f64,
                fraction: matched as f64 / eligible as f64,
                matched,
                eligible,
            }
        })
        .collect();
    CorrelationCurve {
        reference_time: 0.0,
        brightness_exponent: 14,
        points,
    }
}

#[test]
fn noiseless_curve_recovers_grid_exact_parameters() {
    let fit = fit_modified_cauchy(&noiseless_mc_curve()).unwrap();
    assert_eq!(fit.alpha, 1.0);
    assert_eq!(fit.beta, 4.0);
    assert_eq!(fit.peak, 1.0);
    assert!(fit.residual < 1e-9, "residual {:.3e}", fit.residual);
    assert_eq!(fit.one_month_drop, 0.2);
    assert_eq!(fit.one_month_drop, 1.0 / (fit.beta + 1.0));
}

#[test]
fn standard_cauchy_is_the_alpha_two_special_case() {
    // gamma = 1: denominators 1 + k^2 all divide 408850.
    let eligible = 408_850u64;
    let points: Vec<CurvePoint> = (-7..=7)
        .map(|k: i64| {
            let matched = eligible / (1 + (k * k) as u64);
            CurvePoint {
                t: k as f64,
                fraction: matched as f64 / eligible as f64,
                matched,
                eligible,
            }
        })
        .collect();
    let curve = CorrelationCurve {
        reference_time: 0.0,
        brightness_exponent: 10,
        points,
    };
    let fit = fit_modified_cauchy(&curve).unwrap();
    assert_eq!((fit.alpha, fit.beta), (2.0, 1.0));

    let plain = fit_cauchy(&curve).unwrap();
    assert_eq!(plain.gamma, 1.0);
}

#[test]
fn modified_cauchy_beats_cauchy_and_gaussian_on_its_own_truth() {
    let curve = noiseless_mc_curve();
    let mc = fit_modified_cauchy(&curve).unwrap();
    let cauchy = fit_cauchy(&curve).unwrap();
    let gauss = fit_gaussian(&curve).unwrap();
    assert!(
        mc.residual < cauchy.residual,
        "mc {} !< cauchy {}",
        mc.residual,
        cauchy.residual
    );
    assert!(
        mc.residual < gauss.residual,
        "mc {} !< gaussian {}",
        mc.residual,
        gauss.residual
    );
}

#[test]
fn fit_is_the_exhaustive_grid_argmin() {
    // Noisy curve so the argmin is nontrivial.
    let mut rng = ChaCha20Rng::seed_from_u64(31);
    let eligible = 10_000u64;
    let points: Vec<CurvePoint> = (-7..=7)
        .map(|k: i64| {
            let model = modified_cauchy(k as f64, 0.0, 1.0, 4.0);
            let noisy = model + (uniform(&mut rng) - 0.5) * 0.04;
            let matched = ((noisy * eligible as f64).round() as u64).min(eligible);
            CurvePoint {
                t: k as f64,
                fraction: matched as f64 / eligible as f64,
                matched,
                eligible,
            }
        })
        .collect();
    let curve = CorrelationCurve {
        reference_time: 0.0,
        brightness_exponent: 14,
        points,
    };

    let fit = fit_modified_cauchy(&curve).unwrap();
    for alpha in mc_alpha_grid() {
        for beta in scale_grid() {
            let r = fit_objective(&curve.points, |t| {
                fit.peak * modified_cauchy(t, 0.0, alpha, beta)
            });
            assert!(
                fit.residual <= r,
                "grid point ({alpha}, {beta}) residual {r} beats fit {}",
                fit.residual
            );
        }
    }

    let cauchy = fit_cauchy(&curve).unwrap();
    for gamma in scale_grid() {
        let r = fit_objective(&curve.points, |t| cauchy.peak * cauchy_model(t, 0.0, gamma));
        assert!(cauchy.residual <= r);
    }
    let gauss = fit_gaussian(&curve).unwrap();
    for sigma in scale_grid() {
        let r = fit_objective(&curve.points, |t| gauss.peak * gaussian_model(t, 0.0, sigma));
        assert!(gauss.residual <= r);
    }
}

#[test]
fn noisy_recovery_stays_in_band_for_a_fixed_seed() {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let eligible = 10_000u64;
    let points: Vec<CurvePoint> = (-7..=7)
        .map(|k: i64| {
            let model = modified_cauchy(k as f64, 0.0, 1.0, 4.0);
            let noisy = model + (uniform(&mut rng) - 0.5) * 0.04;
            let matched = ((noisy * eligible as f64).round() as u64).min(eligible);
            CurvePoint {
                t: k as f64,
                fraction: matched as f64 / eligible as f64,
                matched,
                eligible,
            }
        })
        .collect();
    let fit = fit_modified_cauchy(&CorrelationCurve {
        reference_time: 0.0,
        brightness_exponent: 14,
        points,
    })
    .unwrap();
    assert!((0.8..=1.2).contains(&fit.alpha), "alpha {}", fit.alpha);
    assert!((3.0..=5.25).contains(&fit.beta), "beta {}", fit.beta);
}

#[test]
fn temporal_curve_tracks_a_drifting_beam() {
    // 10^4 sources in one brightness bin; each outpost window re-observes a
    // source with probability 4/(4 + |t - t0|).
    let mut rng = ChaCha20Rng::seed_from_u64(12);
    let n = 10_000u32;
    let telescope = SourceSet::new(
        "2020-06-17",
        "synthetic",
        (0..n).map(|i| (i, 16 + (i as u64 % 16))), // all brightness in [2^4, 2^5)
    )
    .unwrap();
    let t0 = timecoord::parse_label("2020-06-17").unwrap();

    let mut outposts = Vec::new();
    for m in 0..15u32 {
        let (year, month) = timecoord::month_add(2020, 1, m);
        let t = timecoord::month_center(year, month);
        let p = modified_cauchy(t, t0, 1.0, 4.0);
        let sources = (0..n).filter(|_| uniform(&mut rng) < p).collect();
        outposts.push(OutpostWindow {
            label: timecoord::month_label(year, month),
            t,
            space: "synthetic".to_string(),
            sources,
        });
    }

    let curve = temporal_curve(&telescope, 4, &outposts).unwrap();
    assert_eq!(curve.points.len(), 15);
    for point in &curve.points {
        let model = modified_cauchy(point.t, t0, 1.0, 4.0);
        assert!(
            (point.fraction - model).abs() < 0.03,
            "t={} fraction={} model={}",
            point.t,
            point.fraction,
            model
        );
        assert_eq!(point.eligible, n as u64);
    }

    // And the fit pulls the drift parameters back out.
    let fit = fit_modified_cauchy(&curve).unwrap();
    assert!((0.8..=1.2).contains(&fit.alpha), "alpha {}", fit.alpha);
    assert!((3.0..=5.25).contains(&fit.beta), "beta {}", fit.beta);
}

#[test]
fn overlap_fractions_follow_a_logarithmic_share_law() {
    // Brightness log-uniform over [1, 2^16) so every bin is populated, each
    // source shared with probability log2(d)/15 clipped to 1.
    let mut rng = ChaCha20Rng::seed_from_u64(40);
    let n = 100_000u32;
    let mut pairs = Vec::with_capacity(n as usize);
    let mut shared = std::collections::BTreeSet::new();
    for i in 0..n {
        let exponent = uniform(&mut rng) * 16.0;
        let d = (libm::exp2(exponent).floor() as u64).max(1);
        pairs.push((i, d));
        let p = (libm::log2(d as f64) / 15.0).min(1.0);
        if uniform(&mut rng) < p {
            shared.insert(i);
        }
    }
    let telescope = SourceSet::new("2020-06-17", "synthetic", pairs).unwrap();
    let outpost = OutpostWindow {
        label: "2020-06".to_string(),
        t: 0.0,
        space: "synthetic".to_string(),
        sources: shared,
    };

    let bins = overlap_by_brightness(&telescope, &outpost).unwrap();
    assert!(bins.len() >= 14, "expected most bins populated");
    for bin in &bins {
        if bin.eligible < 400 {
            continue;
        }
        let center_law = ((bin.exponent as f64 + 0.5) / 15.0).min(1.0);
        assert!(
            (bin.fraction - center_law).abs() < 0.05,
            "bin {} fraction {} vs law {}",
            bin.exponent,
            bin.fraction,
            center_law
        );
    }
}

#[test]
fn overlap_is_invariant_under_consistent_relabeling() {
    let mut rng = ChaCha20Rng::seed_from_u64(41);
    let pairs: Vec<(u32, u64)> = (0..500u32).map(|i| (i, 1 + (i as u64 * 7) % 300)).collect();
    let telescope = SourceSet::new("2021-01", "s", pairs.clone()).unwrap();
    let members: std::collections::BTreeSet<u32> =
        (0..500u32).filter(|_| uniform(&mut rng) < 0.4).collect();
    let outpost = OutpostWindow {
        label: "2021-01".to_string(),
        t: 0.0,
        space: "s".to_string(),
        sources: members.clone(),
    };
    let before = overlap_by_brightness(&telescope, &outpost).unwrap();

    // Injective relabel: spread indices out and flip bits.
    let relabel = |i: u32| i.wrapping_mul(2_654_435_761) ^ 0xdead_beef;
    let telescope2 = SourceSet::new(
        "2021-01",
        "s",
        pairs.iter().map(|&(i, d)| (relabel(i), d)),
    )
    .unwrap();
    let outpost2 = OutpostWindow {
        label: "2021-01".to_string(),
        t: 0.0,
        space: "s".to_string(),
        sources: members.iter().map(|&i| relabel(i)).collect(),
    };
    let after = overlap_by_brightness(&telescope2, &outpost2).unwrap();
    assert_eq!(before, after);
}

#[test]
fn string_keyed_source_sets_work_end_to_end() {
    let telescope = SourceSet::new(
        "2020-06",
        "labels",
        [
            ("1.1.1.1".to_string(), 20u64),
            ("2.2.2.2".to_string(), 21),
            ("3.3.3.3".to_string(), 5),
        ],
    )
    .unwrap();
    let outpost = OutpostWindow {
        label: "2020-06".to_string(),
        t: timecoord::parse_label("2020-06").unwrap(),
        space: "labels".to_string(),
        sources: ["1.1.1.1".to_string()].into_iter().collect(),
    };
    let curve = temporal_curve(&telescope, 4, std::slice::from_ref(&outpost)).unwrap();
    assert_eq!(curve.points[0].matched, 1);
    assert_eq!(curve.points[0].eligible, 2);
    assert_eq!(curve.points[0].fraction, 0.5);
}
