//! Per-trial utility predicates. Big-O constants are replaced by an explicit
//! constant `c` (40 by default), and each check reads ground truth that a
//! private mechanism could never see.

use crate::primitives::dataset::{IntervalRange, RealDataset};
use crate::primitives::params::capped_log;

pub const DEFAULT_C: f64 = 40.0;
/// Default constant for the soft sample-size conditions: the radius
/// threshold slack `6/ε · log(2/β)` with a factor two.
pub const DEFAULT_C1: f64 = 12.0;

/// `rad~ <= 2·rad(D) + 3b`.
pub fn radius_ok(estimate: f64, data: &RealDataset, bucket: f64) -> bool {
    estimate <= 2.0 * data.radius() + 3.0 * bucket
}

/// `(c/ε)·cappedLog(cappedLog(γ/b)/β)`
pub fn range_outlier_bound(gamma: f64, bucket: f64, epsilon: f64, beta: f64, c: f64) -> f64 {
    c / epsilon * capped_log(capped_log(gamma / bucket) / beta)
}

/// Width at most `4γ(D) + 6b` and few points outside the range.
pub fn range_ok(range: &IntervalRange, data: &RealDataset, bucket: f64, epsilon: f64, beta: f64, c: f64) -> bool {
    let gamma = data.width();
    range.width() <= 4.0 * gamma + 6.0 * bucket
        && data.count_outside(range) as f64 <= range_outlier_bound(gamma, bucket, epsilon, beta, c)
}

/// `(c/ε)·cappedLog(γ/(bβ))`
pub fn quantile_rank_bound(gamma: f64, bucket: f64, epsilon: f64, beta: f64, c: f64) -> f64 {
    c / epsilon * capped_log(gamma / (bucket * beta))
}

/// Rank error (with value slack `b`) within the bound.
pub fn quantile_ok(tau: usize, value: f64, data: &RealDataset, bucket: f64, epsilon: f64, beta: f64, c: f64) -> bool {
    match data.rank_error(tau, value, bucket) {
        Some(t) => t as f64 <= quantile_rank_bound(data.width(), bucket, epsilon, beta, c),
        None => false,
    }
}

/// `φ(1/16)/4 <= estimate <= IQR`.
pub fn iqr_lower_bound_ok(estimate: f64, phi_sixteenth: f64, iqr: f64) -> bool {
    0.25 * phi_sixteenth <= estimate && estimate <= iqr
}

/// `|μ~ - μ(D)| <= c(γ + b)/(εn) · cappedLog(cappedLog((γ + b)/b)/β)`.
pub fn mean_ok(estimate: f64, data: &RealDataset, bucket: f64, epsilon: f64, beta: f64, c: f64) -> bool {
    let Some(mean) = data.mean() else {
        return false;
    };
    let n = data.len() as f64;
    let scale = data.width() + bucket;
    (estimate - mean).abs() <= c * scale / (epsilon * n) * capped_log(capped_log(scale / bucket) / beta)
}

/// Fourth central moment of the sample.
pub fn sample_fourth_moment(data: &RealDataset) -> f64 {
    let mean = data.mean().unwrap_or(0.0);
    let n = data.len().max(1) as f64;
    data.values().iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n
}

/// Unbiased sample variance; zero below two points.
pub fn sample_variance(data: &RealDataset) -> f64 {
    let n = data.len();
    if n < 2 {
        return 0.0;
    }
    let mean = data.mean().unwrap_or(0.0);
    data.values().iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
}

/// Privacy term on the squared-difference scale `γ(D)²` plus a sampling
/// term `sqrt(m4·cappedLog(1/β)/n)`, both times `c`, against `target`.
pub fn variance_ok(estimate: f64, target: f64, data: &RealDataset, bucket: f64, epsilon: f64, beta: f64, c: f64) -> bool {
    let n = data.len() as f64;
    let h_scale = data.width().powi(2) + bucket;
    let privacy = h_scale / (epsilon * n) * capped_log(capped_log(h_scale / bucket) / beta);
    let sampling = (sample_fourth_moment(data) * capped_log(1.0 / beta) / n).sqrt();
    (estimate - target).abs() <= c * (privacy + sampling)
}

/// The estimate lies between the narrowest and widest quartile gaps that
/// rank error `t = (c/ε)·cappedLog(γ/(bβ))` allows, widened by `2b`.
pub fn iqr_ok(estimate: f64, data: &RealDataset, bucket: f64, epsilon: f64, beta: f64, c: f64) -> bool {
    let n = data.len();
    if n < 4 {
        return false;
    }
    let t = quantile_rank_bound(data.width(), bucket, epsilon, beta, c).floor() as i64;
    let (lo, hi) = ((n / 4) as i64, (3 * n / 4) as i64);
    let narrow = data.at_rank(hi - t) - data.at_rank(lo + t);
    let wide = data.at_rank(hi + t) - data.at_rank(lo - t);
    narrow.min(0.0) - 2.0 * bucket <= estimate && estimate <= wide + 2.0 * bucket
}

/// Soft sample-size condition of the empirical estimators:
/// `n > (c1/ε)·cappedLog(rad(D)/β)`.
pub fn empirical_condition(data: &RealDataset, bucket: f64, epsilon: f64, beta: f64, c1: f64) -> bool {
    data.len() as f64 > c1 / epsilon * capped_log(data.radius() / bucket / beta)
}

/// Soft sample-size condition of the universal estimators:
/// `n > (c1/ε)·(cappedLog(cappedLog(1/φ(1/16))) + cappedLog(cappedLog(IQR)) + cappedLog(1/β))`.
pub fn statistical_condition(n: usize, phi_sixteenth: f64, iqr: f64, epsilon: f64, beta: f64, c1: f64) -> bool {
    let need = capped_log(capped_log(1.0 / phi_sixteenth)) + capped_log(capped_log(iqr)) + capped_log(1.0 / beta);
    n as f64 > c1 / epsilon * need
}
