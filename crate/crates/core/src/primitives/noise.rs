//! The single source of randomness for every mechanism in the crate.

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

/// Seedable randomness stream backed by ChaCha20 (a counter-based generator).
///
/// With `noiseless` set, Laplace draws return exactly zero and the
/// exponential mechanism picks a maximum-score outcome (smallest value on
/// ties). Shuffles and subsamples stay random in both modes, so the same seed
/// yields the same pairing and the same subsample with or without noise.
///
/// A `NoiseSource` is single-owner. Parallel trials should each build their
/// own from [`derive_seed`].
#[derive(Debug, Clone)]
pub struct NoiseSource {
    seed: u64,
    noiseless: bool,
    rng: ChaCha20Rng,
}

impl NoiseSource {
    pub fn new(seed: u64) -> Self {
        Self::with_mode(seed, false)
    }

    /// Debug source: zero Laplace noise, deterministic exponential mechanism.
    pub fn noiseless(seed: u64) -> Self {
        Self::with_mode(seed, true)
    }

    pub fn with_mode(seed: u64, noiseless: bool) -> Self {
        Self {
            seed,
            noiseless,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_noiseless(&self) -> bool {
        self.noiseless
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn open_unit(&mut self) -> f64 {
        loop {
            let u = (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Uniform integer in `0..bound`. `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.rng.random_range(0..bound)
    }

    pub fn laplace(&mut self, scale: f64) -> Result<f64> {
        sample_laplace(scale, self)
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.rng);
    }

    /// Moves a uniformly random `amount`-subset to the front (partial
    /// Fisher-Yates) and returns it.
    pub fn partial_shuffle<'a, T>(&mut self, items: &'a mut [T], amount: usize) -> &'a mut [T] {
        items.partial_shuffle(&mut self.rng, amount).0
    }

    /// Raw generator access for distribution samplers. Mechanisms should use
    /// the typed methods above so that noiseless mode is honored.
    pub fn rng(&mut self) -> &mut ChaCha20Rng {
        &mut self.rng
    }
}

/// One draw from Lap(scale) by inverse-CDF transform of a uniform draw.
///
/// Returns exactly `0.0` in noiseless mode (no randomness consumed).
pub fn sample_laplace(scale: f64, noise: &mut NoiseSource) -> Result<f64> {
    if !scale.is_finite() || scale <= 0.0 {
        return Err(Error::invalid(format!("Laplace scale must be finite and positive, got {scale}")));
    }
    if noise.noiseless {
        return Ok(0.0);
    }
    let u = noise.open_unit() - 0.5;
    // 1 - 2|u| lies in (0, 1], so the log is finite.
    Ok(-scale * u.signum() * (1.0 - 2.0 * u.abs()).ln())
}

/// Mixes a base seed with a stream index (SplitMix64 finalizer) so per-trial
/// sources are independent and reproducible.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_laplace_is_zero() {
        let mut noise = NoiseSource::noiseless(7);
        assert_eq!(sample_laplace(1.0, &mut noise).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_scale() {
        let mut noise = NoiseSource::new(1);
        for scale in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(sample_laplace(scale, &mut noise), Err(Error::InvalidArgument(_))));
        }
    }

    #[test]
    fn laplace_moments() {
        // Lap(s) has mean 0 and standard deviation s * sqrt(2).
        let scale = 2.0;
        let mut noise = NoiseSource::new(42);
        let n = 1_000_000;
        let draws: Vec<f64> = (0..n).map(|_| sample_laplace(scale, &mut noise).unwrap()).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let expected_std = scale * 2f64.sqrt();
        assert!(mean.abs() <= 0.02, "mean {mean}");
        assert!((var.sqrt() / expected_std - 1.0).abs() <= 0.02, "std {}", var.sqrt());
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = NoiseSource::new(99);
        let mut b = NoiseSource::new(99);
        for _ in 0..100 {
            assert_eq!(a.laplace(1.5).unwrap().to_bits(), b.laplace(1.5).unwrap().to_bits());
        }
    }

    #[test]
    fn derived_seeds_differ() {
        let seeds: std::collections::HashSet<u64> = (0..1000).map(|i| derive_seed(5, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
