use crate::empirical::discretize::Discretization;
use crate::empirical::radius::radius_real;
use crate::error::{Error, Result};
use crate::primitives::amplify::{amplified_epsilon, subsample};
use crate::primitives::clip::clipped_mean;
use crate::primitives::dataset::{IntervalRange, RealDataset};
use crate::primitives::ledger::{Amplification, Ledger};
use crate::primitives::noise::{sample_laplace, NoiseSource};
use crate::primitives::params::PrivacyParams;
use crate::statistical::iqr_lower_bound::estimate_iqr_lower_bound;
use crate::statistical::mean::{inner_epsilon, subsample_size};
use crate::statistical::outcome::{EstimateOutcome, Settings, VarianceBudget};
use crate::statistical::pairs::{pair_differences, DifferenceMode};

/// Post-processing for callers that need a nonnegative variance.
pub fn clamp_variance(value: f64) -> f64 {
    value.max(0.0)
}

/// Private variance of an i.i.d. sample with no assumed bounds.
///
/// Squared differences `H` of a random matching have mean `2σ²`. The IQR
/// lower bound `b` (ε/8, β/7) gives a bucket `b²` for a private radius of a
/// `floor(εn')`-subsample of `H` (3ε/4 amplified, β/7); the estimate is half
/// the clipped mean of `H` in `[0, r]` plus Laplace noise. The noise scale
/// depends on [`VarianceBudget`]. Negative results are flagged, not clamped.
pub fn estimate_variance(
    data: &RealDataset,
    params: PrivacyParams,
    settings: &Settings,
    noise: &mut NoiseSource,
) -> Result<EstimateOutcome> {
    let n = data.len();
    if n < 4 {
        return Err(Error::InsufficientSample { n, required: 4.0 });
    }
    let epsilon = params.epsilon();
    let eps = params.split(&[0.125, 0.75, 0.125])?;

    let bound = estimate_iqr_lower_bound(data, params.part(eps[0], 7.0)?, settings, noise)?;
    let mut ledger = Ledger::new();
    ledger.absorb("iqr_lower_bound", bound.ledger.clone());

    let h = pair_differences(data, DifferenceMode::Squared, noise)?.into_dataset();
    let n_prime = h.len();
    let m = subsample_size(epsilon, n_prime)?;
    let sub = subsample(&h, m, noise)?;
    let eps_inner = 0.75 * inner_epsilon(epsilon)?;
    let bucket = bound.value * bound.value;
    let disc = Discretization::new(bucket)
        .map_err(|_| Error::OutOfRange(format!("squared IQR lower bound {bucket} is not a usable bucket")))?;
    let radius = radius_real(&sub, disc, params.part(eps_inner, 7.0)?, noise)?;
    let fraction = m as f64 / n_prime as f64;
    ledger.charge_amplified(
        "subsampled_radius",
        eps[1],
        Amplification {
            inner_epsilon: eps_inner,
            fraction,
            amplified: amplified_epsilon(eps_inner, fraction)?,
        },
    );

    let interval = IntervalRange::new(0.0, radius)?;
    let center = clipped_mean(&h, &interval)?;
    // the clipped mean over n' pairs moves by at most r/n'
    let sensitivity = radius / n_prime as f64;
    let scale = match settings.variance_budget {
        VarianceBudget::Naive => 8.0 * radius / (epsilon * n as f64),
        VarianceBudget::Conservative => sensitivity / eps[2],
    };
    let draw = if radius > 0.0 { sample_laplace(scale, noise)? } else { 0.0 };
    let spent = if radius > 0.0 { sensitivity / scale } else { eps[2] };
    ledger.charge("laplace", spent);

    let estimate = 0.5 * (center + draw);
    let mut out = EstimateOutcome::new(estimate, ledger);
    out.chosen_range = Some(interval);
    out.clipped_count = h.count_outside(&interval);
    out.bucket = Some(bucket);
    out.laplace_draw = 0.5 * draw;
    out.negative = estimate < 0.0;
    out.details.insert("iqr_lower_bound".into(), bound.value);
    out.details.insert("pairs".into(), n_prime as f64);
    out.details.insert("subsample_size".into(), m as f64);
    out.details.insert("inner_epsilon".into(), eps_inner);
    out.details.insert("radius".into(), radius);
    Ok(out)
}
