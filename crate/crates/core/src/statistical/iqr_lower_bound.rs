//! Private lower bound on the interquartile range, used as the
//! discretization bucket by the universal estimators.
//!
//! Works on the absolute differences `G` of a random matching: the power of
//! two at which `Count(G, x)` crosses `3n'/16` sits between a small quantile
//! of `|X - X'|` and the IQR.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primitives::dataset::RealDataset;
use crate::primitives::ledger::Ledger;
use crate::primitives::noise::NoiseSource;
use crate::primitives::params::PrivacyParams;
use crate::primitives::svt::svt;
use crate::statistical::outcome::{IqrBoundReturn, Settings};
use crate::statistical::pairs::{pair_differences, DifferenceMode, PairedDifferences};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IqrLowerBound {
    pub value: f64,
    /// Stop index of the increasing ladder `Count(G, 2^(i-1))`.
    pub increasing_stop: usize,
    /// Stop index of the decreasing ladder `Count(G, 2^-(j-1))`, if it was
    /// needed and stopped.
    pub decreasing_stop: Option<usize>,
    pub ledger: Ledger,
}

/// Exact `2^k` over the whole f64 range, saturating to 0 and infinity.
pub(crate) fn pow2(k: i64) -> f64 {
    if k > 1023 {
        f64::INFINITY
    } else if k >= -1022 {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else if k >= -1074 {
        f64::from_bits(1u64 << (k + 1074))
    } else {
        0.0
    }
}

/// Private IQR lower bound of `data`: pairs the sample at random and runs
/// [`iqr_lower_bound_from_differences`] on the absolute differences.
pub fn estimate_iqr_lower_bound(
    data: &RealDataset,
    params: PrivacyParams,
    settings: &Settings,
    noise: &mut NoiseSource,
) -> Result<IqrLowerBound> {
    let g = pair_differences(data, DifferenceMode::Absolute, noise)?;
    iqr_lower_bound_from_differences(&g, params, settings, noise)
}

/// Two SVT ladders over nonnegative differences, ε/2 each.
///
/// The increasing ladder stops at the first `2^(i-1)` whose count exceeds
/// `3n'/16`. If that is the very first query (`i = 1`, already a quarter
/// of `G` is at most 1), a decreasing ladder halves `x` from 1 until the
/// count first falls below `3n'/16`; it runs on negated counts so the SVT
/// "first above" rule gives "first below".
pub fn iqr_lower_bound_from_differences(
    g: &PairedDifferences,
    params: PrivacyParams,
    settings: &Settings,
    noise: &mut NoiseSource,
) -> Result<IqrLowerBound> {
    let g = g.values();
    let n_prime = g.len();
    if n_prime == 0 {
        return Err(Error::InsufficientSample { n: 0, required: 1.0 });
    }
    let eps = params.split(&[0.5, 0.5])?;
    let threshold = 3.0 * n_prime as f64 / 16.0;
    let count = |x: f64| g.count_le(x) as f64;

    let up = std::iter::successors(Some(1.0_f64), |x| Some(x * 2.0)).map(count);
    let increasing = svt(threshold, eps[0], up, settings.max_queries, noise)?;

    let down = std::iter::successors(Some(1.0_f64), |x| Some(x / 2.0)).map(|x| -count(x));
    let decreasing = svt(-threshold, eps[1], down, settings.max_queries, noise);

    let mut ledger = Ledger::new();
    ledger.charge("increasing_ladder", eps[0]);
    ledger.charge("decreasing_ladder", eps[1]);

    let (value, decreasing_stop) = if increasing > 1 {
        (pow2(increasing as i64 - 2), decreasing.ok())
    } else {
        let j = decreasing?;
        let k = match settings.iqr_return {
            IqrBoundReturn::Pseudocode => -(j as i64),
            IqrBoundReturn::Proof => 1 - j as i64,
        };
        (pow2(k), Some(j))
    };
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::OutOfRange(format!("IQR lower bound {value} is not a positive finite number")));
    }
    Ok(IqrLowerBound {
        value,
        increasing_stop: increasing,
        decreasing_stop,
        ledger,
    })
}
