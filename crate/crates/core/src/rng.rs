//! Small deterministic draws on top of a raw RNG stream.
//!
//! Sampling goes through these helpers rather than a distributions crate so
//! that outputs are a pure function of the ChaCha stream and stay
//! reproducible across dependency upgrades.

use rand_core::RngCore;

/// Uniform draw in [0, 1) with 53 random mantissa bits.
pub(crate) fn uniform_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// In-place Fisher-Yates shuffle.
pub(crate) fn shuffle<T>(rng: &mut impl RngCore, xs: &mut [T]) {
    for i in (1..xs.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        xs.swap(i, j);
    }
}
