//! Monte-Carlo statistical width: the `(1 - β)`-quantile of the sample
//! width `max - min` over independent samples of size `m`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::spec::DistributionSpec;
use crate::primitives::noise::{derive_seed, NoiseSource};

pub const MIN_TRIALS: usize = 100;
pub const DEFAULT_TRIALS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloQuantile {
    pub value: f64,
    /// Half the spread of the order statistics one binomial standard
    /// deviation either side of the chosen rank.
    pub std_error: f64,
    pub trials: usize,
}

/// Empirical `level`-quantile of `statistic` over `trials` runs, each with
/// its own noise stream derived from `seed`.
pub fn monte_carlo_quantile<F>(level: f64, trials: usize, seed: u64, statistic: F) -> Result<MonteCarloQuantile>
where
    F: Fn(&mut NoiseSource) -> f64 + Sync,
{
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::invalid(format!("quantile level must be in (0, 1), got {level}")));
    }
    if trials < MIN_TRIALS {
        return Err(Error::invalid(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    let mut values: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| statistic(&mut NoiseSource::new(derive_seed(seed, t))))
        .collect();
    values.sort_by(f64::total_cmp);
    let t = trials as f64;
    let at = |rank: f64| values[(rank.ceil() as usize).clamp(1, trials) - 1];
    let k = level * t;
    let spread = (t * level * (1.0 - level)).sqrt();
    Ok(MonteCarloQuantile {
        value: at(k),
        std_error: 0.5 * (at(k + spread) - at(k - spread)),
        trials,
    })
}

fn width_of(draws: impl Iterator<Item = f64>) -> f64 {
    let (lo, hi) = draws.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)));
    hi - lo
}

/// `γ(m, β)` of `spec`.
pub fn statistical_width(spec: &DistributionSpec, m: usize, beta: f64, trials: usize, seed: u64) -> Result<MonteCarloQuantile> {
    if m == 0 {
        return Err(Error::invalid("sample size must be at least 1"));
    }
    monte_carlo_quantile(1.0 - beta, trials, seed, |noise| width_of((0..m).map(|_| spec.draw(noise))))
}

/// `γ(m, β)` of the distribution of `(X - X')^2`, `X, X'` i.i.d. `spec`.
pub fn squared_difference_width(
    spec: &DistributionSpec,
    m: usize,
    beta: f64,
    trials: usize,
    seed: u64,
) -> Result<MonteCarloQuantile> {
    if m == 0 {
        return Err(Error::invalid("sample size must be at least 1"));
    }
    monte_carlo_quantile(1.0 - beta, trials, seed, |noise| {
        width_of((0..m).map(|_| (spec.draw(noise) - spec.draw(noise)).powi(2)))
    })
}
