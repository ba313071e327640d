use serde::{Deserialize, Serialize};

use crate::empirical::discretize::{quantize, Discretization};
use crate::empirical::range::{infinite_domain_range, RangeEstimate};
use crate::error::{Error, Result};
use crate::primitives::clip::clip;
use crate::primitives::dataset::{Dataset, IntDataset, RealDataset, Value};
use crate::primitives::ledger::Ledger;
use crate::primitives::noise::NoiseSource;
use crate::primitives::params::PrivacyParams;
use crate::primitives::quantile::finite_domain_quantile;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileEstimate {
    /// Estimate in data units.
    pub value: f64,
    /// Estimate as a grid index.
    pub grid_value: i64,
    pub tau: usize,
    pub range: RangeEstimate,
    pub clipped: usize,
    /// Additive error allowance from discretization (zero on integer input).
    pub discretization_slack: f64,
    pub ledger: Ledger,
}

impl QuantileEstimate {
    /// Realized rank error against the raw data, allowing the discretization
    /// slack on values. This reads the private data and is meant for
    /// evaluation only.
    pub fn rank_error<T: Value>(&self, data: &Dataset<T>) -> Option<usize> {
        data.rank_error(self.tau, self.value, self.discretization_slack)
    }
}

/// Private `tau`-th order statistic of integer data: a private range at
/// (4ε/5, β/2), then the finite-domain sampler over that range at
/// (ε/5, β/2) on the data clipped into it.
pub fn infinite_domain_quantile(
    data: &IntDataset,
    tau: usize,
    params: PrivacyParams,
    noise: &mut NoiseSource,
) -> Result<QuantileEstimate> {
    if tau == 0 || tau > data.len() {
        return Err(Error::invalid(format!("rank {tau} outside [1, {}]", data.len())));
    }
    let eps = params.split(&[0.8, 0.2])?;
    let range = infinite_domain_range(data, params.part(eps[0], 2.0)?, noise)?;
    let mut ledger = Ledger::new();
    ledger.absorb("range", range.ledger.clone());

    let clipped = clip(data, range.grid_lo(), range.grid_hi())?;
    let grid_value = finite_domain_quantile(&clipped, tau, range.domain(), params.part(eps[1], 2.0)?, noise)?;
    ledger.charge("quantile", eps[1]);

    Ok(QuantileEstimate {
        value: grid_value as f64,
        grid_value,
        tau,
        clipped: data.count_outside(&range.range()),
        range,
        discretization_slack: 0.0,
        ledger,
    })
}

/// [`infinite_domain_quantile`] on real data discretized with bucket `b`.
pub fn quantile_real(
    data: &RealDataset,
    tau: usize,
    disc: Discretization,
    params: PrivacyParams,
    noise: &mut NoiseSource,
) -> Result<QuantileEstimate> {
    let grid = quantize(data, disc)?;
    let mut est = infinite_domain_quantile(&grid, tau, params, noise)?;
    let b = disc.bucket();
    est.value = est.grid_value as f64 * b;
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
    fn point_mass() {
        let d = IntDataset::from_ints(vec![5; 60]);
        let mut noise = NoiseSource::noiseless(0);
        for tau in [1, 30, 60] {
            assert_eq!(infinite_domain_quantile(&d, tau, loose(), &mut noise).unwrap().grid_value, 5);
        }
    }

    #[test]
    fn noiseless_median_trace() {
        let d = IntDataset::from_ints((1..=100).collect());
        let mut noise = NoiseSource::noiseless(0);
        let q = infinite_domain_quantile(&d, 50, loose(), &mut noise).unwrap();
        assert_eq!(q.grid_value, 50);
        assert_eq!(q.rank_error(&d), Some(0));
    }

    #[test]
    fn rejects_bad_rank() {
        let d = IntDataset::from_ints(vec![1, 2]);
        let mut noise = NoiseSource::new(0);
        assert!(infinite_domain_quantile(&d, 3, loose(), &mut noise).is_err());
        assert!(infinite_domain_quantile(&d, 0, loose(), &mut noise).is_err());
    }

    #[test]
    fn output_inside_private_range() {
        let d = IntDataset::from_ints((0..2000).map(|i| (i * 37) % 1001 - 500).collect());
        let params = PrivacyParams::new(1.0, 0.1).unwrap();
        for seed in 0..20 {
            let mut noise = NoiseSource::new(seed);
            let q = infinite_domain_quantile(&d, 500, params, &mut noise).unwrap();
            assert!(q.range.domain().contains(q.grid_value));
        }
    }
}
