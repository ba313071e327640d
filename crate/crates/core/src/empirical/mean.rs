use serde::{Deserialize, Serialize};

use crate::empirical::discretize::{quantize, Discretization};
use crate::empirical::range::{infinite_domain_range, RangeEstimate};
use crate::error::{Error, Result};
use crate::primitives::clip::clipped_mean;
use crate::primitives::dataset::{IntDataset, RealDataset};
use crate::primitives::ledger::Ledger;
use crate::primitives::noise::{sample_laplace, NoiseSource};
use crate::primitives::params::PrivacyParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanEstimate {
    pub value: f64,
    pub range: RangeEstimate,
    /// Elements outside the private range.
    pub clipped: usize,
    pub laplace_draw: f64,
    /// Additive error allowance from discretization (zero on integer input).
    pub discretization_slack: f64,
    pub ledger: Ledger,
}

/// Clipped mean inside a private range plus Laplace noise at the clipped
/// mean's sensitivity. 4ε/5 goes to the range (at β/2), ε/5 to the noise.
pub fn infinite_domain_mean(data: &IntDataset, params: PrivacyParams, noise: &mut NoiseSource) -> Result<MeanEstimate> {
    if data.is_empty() {
        return Err(Error::invalid("mean of an empty dataset"));
    }
    let eps = params.split(&[0.8, 0.2])?;
    let range = infinite_domain_range(data, params.part(eps[0], 2.0)?, noise)?;
    let interval = range.range();
    let mut ledger = Ledger::new();
    ledger.absorb("range", range.ledger.clone());

    let center = clipped_mean(data, &interval)?;
    let width = interval.width();
    // a zero-width range pins the clipped mean; nothing to hide
    let draw = if width > 0.0 {
        sample_laplace(width / (data.len() as f64 * eps[1]), noise)?
    } else {
        0.0
    };
    ledger.charge("laplace", eps[1]);

    Ok(MeanEstimate {
        value: center + draw,
        clipped: data.count_outside(&interval),
        range,
        laplace_draw: draw,
        discretization_slack: 0.0,
        ledger,
    })
}

/// [`infinite_domain_mean`] on real data discretized with bucket `b`; the
/// estimate is reported in data units with a slack of `b`.
pub fn mean_real(data: &RealDataset, disc: Discretization, params: PrivacyParams, noise: &mut NoiseSource) -> Result<MeanEstimate> {
    let grid = quantize(data, disc)?;
    let mut est = infinite_domain_mean(&grid, params, noise)?;
    let b = disc.bucket();
    est.value *= b;
    est.laplace_draw *= b;
    est.range.bucket = b;
    est.discretization_slack = b;
    Ok(est)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loose() -> PrivacyParams {
        PrivacyParams::new(1e6, 0.1).unwrap()
    }

    #[test]
    fn constant_data() {
        let d = IntDataset::from_ints(vec![7; 2000]);
        let mut noise = NoiseSource::noiseless(0);
        assert_eq!(infinite_domain_mean(&d, PrivacyParams::new(1.0, 0.1).unwrap(), &mut noise).unwrap().value, 7.0);
        let mut noise = NoiseSource::new(0);
        assert_eq!(infinite_domain_mean(&d, loose(), &mut noise).unwrap().value, 7.0);
    }

    #[test]
    fn two_point_trace() {
        let mut v = vec![0; 100];
        v.extend(vec![10; 100]);
        let d = IntDataset::from_ints(v);
        let mut noise = NoiseSource::noiseless(0);
        let m = infinite_domain_mean(&d, loose(), &mut noise).unwrap();
        assert_eq!(m.value, 5.0);
        assert_eq!(m.clipped, 0);
    }

    #[test]
    fn real_constant_within_half_bucket() {
        let c = 2.71;
        let d = RealDataset::new(vec![c; 64]).unwrap();
        let mut noise = NoiseSource::noiseless(0);
        let m = mean_real(&d, Discretization::new(0.25).unwrap(), PrivacyParams::new(1.0, 0.1).unwrap(), &mut noise).unwrap();
        assert!((m.value - c).abs() <= 0.125);
    }

    #[test]
    fn ledger_sums_to_epsilon() {
        let d = IntDataset::from_ints((0..300).map(|i| i * 3 - 200).collect());
        let params = PrivacyParams::new(0.9, 0.05).unwrap();
        let mut noise = NoiseSource::new(8);
        let m = infinite_domain_mean(&d, params, &mut noise).unwrap();
        assert_eq!(m.ledger.entries().len(), 4);
        assert!((m.ledger.total() - 0.9).abs() <= 0.9 * f64::EPSILON);
    }
}
