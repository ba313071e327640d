use crate::empirical::discretize::Discretization;
use crate::empirical::range::range_real;
use crate::error::{Error, Result};
use crate::primitives::amplify::{amplified_epsilon, deamplify, subsample};
use crate::primitives::clip::clipped_mean;
use crate::primitives::dataset::RealDataset;
use crate::primitives::ledger::{Amplification, Ledger};
use crate::primitives::noise::{sample_laplace, NoiseSource};
use crate::primitives::params::PrivacyParams;
use crate::statistical::iqr_lower_bound::estimate_iqr_lower_bound;
use crate::statistical::outcome::{EstimateOutcome, Settings};

/// Size of the amplification subsample, `floor(εn)` capped at `n`.
pub(crate) fn subsample_size(epsilon: f64, n: usize) -> Result<usize> {
    let m = (epsilon * n as f64).floor().min(n as f64) as usize;
    if m < 2 {
        return Err(Error::InsufficientSample { n, required: 2.0 / epsilon.min(1.0) });
    }
    Ok(m)
}

/// Inner ε for a step that should cost `epsilon` after amplification by a
/// subsample of fraction at most `min(ε, 1)`.
pub(crate) fn inner_epsilon(epsilon: f64) -> Result<f64> {
    deamplify(epsilon, epsilon.min(1.0))
}

/// Private mean of an i.i.d. sample with no assumed bounds.
///
/// Budget: ε/8 for the IQR lower bound `b` (at β/9), 3ε/4 for a private
/// range found on a `floor(εn)`-subsample at bucket `b` (at β/9), and ε/8
/// for Laplace noise on the full-sample clipped mean.
pub fn estimate_mean(
    data: &RealDataset,
    params: PrivacyParams,
    settings: &Settings,
    noise: &mut NoiseSource,
) -> Result<EstimateOutcome> {
    let n = data.len();
    let epsilon = params.epsilon();
    let m = subsample_size(epsilon, n)?;
    let eps = params.split(&[0.125, 0.75, 0.125])?;

    let bound = estimate_iqr_lower_bound(data, params.part(eps[0], 9.0)?, settings, noise)?;
    let mut ledger = Ledger::new();
    ledger.absorb("iqr_lower_bound", bound.ledger.clone());

    let sub = subsample(data, m, noise)?;
    let eps_inner = 0.75 * inner_epsilon(epsilon)?;
    let disc = Discretization::new(bound.value)?;
    let range = range_real(&sub, disc, params.part(eps_inner, 9.0)?, noise)?;
    let fraction = m as f64 / n as f64;
    ledger.charge_amplified(
        "subsampled_range",
        eps[1],
        Amplification {
            inner_epsilon: eps_inner,
            fraction,
            amplified: amplified_epsilon(eps_inner, fraction)?,
        },
    );

    let interval = range.range();
    let width = interval.width();
    let center = clipped_mean(data, &interval)?;
    let draw = if width > 0.0 {
        sample_laplace(width / (n as f64 * eps[2]), noise)?
    } else {
        0.0
    };
    ledger.charge("laplace", eps[2]);

    let mut out = EstimateOutcome::new(center + draw, ledger);
    out.chosen_range = Some(interval);
    out.clipped_count = data.count_outside(&interval);
    out.bucket = Some(bound.value);
    out.laplace_draw = draw;
    out.details.insert("iqr_lower_bound".into(), bound.value);
    out.details.insert("subsample_size".into(), m as f64);
    out.details.insert("inner_epsilon".into(), eps_inner);
    out.details.insert("clipped_mean".into(), center);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsample_size_rules() {
        assert_eq!(subsample_size(0.5, 100).unwrap(), 50);
        assert_eq!(subsample_size(3.0, 100).unwrap(), 100);
        assert!(matches!(subsample_size(0.01, 100), Err(Error::InsufficientSample { .. })));
    }

    #[test]
    fn ledger_sums_to_epsilon() {
        let values: Vec<f64> = (0..4000).map(|i| (i % 97) as f64 * 0.01).collect();
        let d = RealDataset::new(values).unwrap();
        let params = PrivacyParams::new(0.5, 0.1).unwrap();
        let out = estimate_mean(&d, params, &Settings::default(), &mut NoiseSource::new(9)).unwrap();
        assert!((out.ledger.total() - 0.5).abs() < 1e-12);
        let amp = out.ledger.entries().iter().find_map(|e| e.amplification).unwrap();
        assert!(amp.amplified <= 0.375 + 1e-12);
        assert!((amp.fraction - 0.5).abs() < 1e-12);
    }

    #[test]
    fn noiseless_tracks_sample_mean() {
        let values: Vec<f64> = (0..4000).map(|i| (i % 100) as f64 / 64.0).collect();
        let d = RealDataset::new(values.clone()).unwrap();
        let params = PrivacyParams::new(1.0, 0.1).unwrap();
        let a = estimate_mean(&d, params, &Settings::default(), &mut NoiseSource::noiseless(1)).unwrap();
        assert!((a.estimate - d.mean().unwrap()).abs() < 1e-9, "{a:?}");
    }
}
