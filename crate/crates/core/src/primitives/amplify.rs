//! Privacy amplification by subsampling without replacement.

use crate::error::{Error, Result};
use crate::primitives::dataset::{Dataset, Value};
use crate::primitives::noise::NoiseSource;

fn check_fraction(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::invalid(format!("sampling fraction must lie in (0, 1], got {eta}")));
    }
    Ok(())
}

/// Effective ε of an `epsilon`-DP mechanism run on an `eta`-fraction
/// subsample: `log(1 + eta * (e^epsilon - 1))`.
pub fn amplified_epsilon(epsilon: f64, eta: f64) -> Result<f64> {
    check_fraction(eta)?;
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::invalid(format!("epsilon must be nonnegative, got {epsilon}")));
    }
    Ok((eta * epsilon.exp_m1()).ln_1p())
}

/// Inverse of [`amplified_epsilon`]: the budget to hand a sub-mechanism on
/// an `eta`-fraction subsample so the amplified guarantee is exactly
/// `epsilon_target`. Equals `log((e^ε - 1)/η + 1)`.
pub fn deamplify(epsilon_target: f64, eta: f64) -> Result<f64> {
    check_fraction(eta)?;
    if !(epsilon_target.is_finite() && epsilon_target > 0.0) {
        return Err(Error::invalid(format!("epsilon must be finite and positive, got {epsilon_target}")));
    }
    Ok((epsilon_target.exp_m1() / eta).ln_1p())
}

/// Uniform `m`-subset without replacement (partial Fisher-Yates over an
/// index array), returned sorted.
pub fn subsample<T: Value>(data: &Dataset<T>, m: usize, noise: &mut NoiseSource) -> Result<Dataset<T>> {
    if m == 0 || m > data.len() {
        return Err(Error::invalid(format!("subsample size {m} outside [1, {}]", data.len())));
    }
    let mut idx: Vec<usize> = (0..data.len()).collect();
    let chosen = noise.partial_shuffle(&mut idx, m);
    chosen.sort_unstable();
    let values = chosen.iter().map(|i| data.values()[*i]).collect();
    Ok(Dataset::from_sorted_unchecked(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitives::dataset::IntDataset;
    use proptest::prelude::*;
    use std::collections::HashMap;

    #[test]
    fn deamplify_examples() {
        assert!((deamplify(1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let expected = ((0.5f64.exp() - 1.0) / 0.5 + 1.0).ln();
        let got = deamplify(0.5, 0.5).unwrap();
        assert!((got - expected).abs() < 1e-15);
        assert!((got - 0.831_796_565_751_186).abs() < 1e-12);
        assert!(deamplify(1.0, 0.0).is_err());
        assert!(deamplify(1.0, 1.5).is_err());
    }

    proptest! {
        #[test]
        fn deamplify_round_trip(eps in 1e-3f64..5.0, eta in 1e-3f64..=1.0) {
            let inner = deamplify(eps, eta).unwrap();
            let back = amplified_epsilon(inner, eta).unwrap();
            prop_assert!((back - eps).abs() <= 1e-12 * eps.max(1.0));
        }
    }

    #[test]
    fn full_subsample_is_identity() {
        let d = IntDataset::from_ints(vec![1, 2, 3]);
        let mut noise = NoiseSource::new(1);
        assert_eq!(subsample(&d, 3, &mut noise).unwrap(), d);
    }

    #[test]
    fn subsample_rejects_bad_size() {
        let d = IntDataset::from_ints(vec![1]);
        let mut noise = NoiseSource::new(1);
        assert!(subsample(&d, 2, &mut noise).is_err());
        assert!(subsample(&d, 0, &mut noise).is_err());
    }

    #[test]
    fn pairs_are_uniform() {
        let d = IntDataset::from_ints(vec![1, 2, 3, 4]);
        let mut noise = NoiseSource::new(2024);
        let trials = 100_000;
        let mut freq: HashMap<Vec<i64>, usize> = HashMap::new();
        for _ in 0..trials {
            *freq.entry(subsample(&d, 2, &mut noise).unwrap().into_values()).or_default() += 1;
        }
        assert_eq!(freq.len(), 6);
        for (pair, count) in freq {
            let f = count as f64 / trials as f64;
            assert!((f - 1.0 / 6.0).abs() <= 0.01, "{pair:?}: {f}");
        }
    }
}
