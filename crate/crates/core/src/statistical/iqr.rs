use crate::empirical::discretize::Discretization;
use crate::empirical::quantile::quantile_real;
use crate::error::{Error, Result};
use crate::primitives::dataset::{IntervalRange, RealDataset};
use crate::primitives::ledger::Ledger;
use crate::primitives::noise::NoiseSource;
use crate::primitives::params::PrivacyParams;
use crate::statistical::iqr_lower_bound::estimate_iqr_lower_bound;
use crate::statistical::outcome::{EstimateOutcome, Settings};

/// Private interquartile range: the IQR lower bound divided by `n` sets
/// the bucket, then the `floor(n/4)`-th and `floor(3n/4)`-th order
/// statistics are estimated privately. ε/3 and β/6 for each of the three
/// steps.
pub fn estimate_iqr(
    data: &RealDataset,
    params: PrivacyParams,
    settings: &Settings,
    noise: &mut NoiseSource,
) -> Result<EstimateOutcome> {
    let n = data.len();
    if n < 4 {
        return Err(Error::InsufficientSample { n, required: 4.0 });
    }
    let third = 1.0 / 3.0;
    let eps = params.split(&[third, third, third])?;

    let bound = estimate_iqr_lower_bound(data, params.part(eps[0], 6.0)?, settings, noise)?;
    let mut ledger = Ledger::new();
    ledger.absorb("iqr_lower_bound", bound.ledger.clone());

    let bucket = bound.value / n as f64;
    let disc = Discretization::new(bucket)?;
    let q1 = quantile_real(data, n / 4, disc, params.part(eps[1], 6.0)?, noise)?;
    ledger.absorb("lower_quartile", q1.ledger.clone());
    let q3 = quantile_real(data, 3 * n / 4, disc, params.part(eps[2], 6.0)?, noise)?;
    ledger.absorb("upper_quartile", q3.ledger.clone());

    let mut out = EstimateOutcome::new(q3.value - q1.value, ledger);
    out.chosen_range = IntervalRange::new(q1.value, q3.value).ok();
    out.clipped_count = q1.clipped.max(q3.clipped);
    out.bucket = Some(bucket);
    out.details.insert("iqr_lower_bound".into(), bound.value);
    out.details.insert("lower_quartile".into(), q1.value);
    out.details.insert("upper_quartile".into(), q3.value);
    Ok(out)
}
