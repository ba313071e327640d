use serde::{Deserialize, Serialize};

use crate::empirical::discretize::{quantize, Discretization};
use crate::empirical::radius::infinite_domain_radius;
use crate::error::{Error, Result};
use crate::primitives::clip::clip;
use crate::primitives::dataset::{IntDataset, IntervalRange, RealDataset};
use crate::primitives::ledger::Ledger;
use crate::primitives::noise::NoiseSource;
use crate::primitives::params::PrivacyParams;
use crate::primitives::quantile::{finite_domain_quantile, IntDomain};

/// Private range `[center - radius, center + radius]` on the integer grid,
/// where `center` is a privatized median and `radius` the private radius of
/// the recentred data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeEstimate {
    pub center: i64,
    pub radius: i64,
    /// Radius found before recentring; bounds the median search.
    pub coarse_radius: i64,
    /// Grid spacing in data units (1 for integer input).
    pub bucket: f64,
    pub ledger: Ledger,
}

impl RangeEstimate {
    pub fn grid_lo(&self) -> i64 {
        self.center - self.radius
    }

    pub fn grid_hi(&self) -> i64 {
        self.center + self.radius
    }

    pub fn domain(&self) -> IntDomain {
        IntDomain::new(self.grid_lo(), self.grid_hi()).expect("radius is nonnegative")
    }

    /// The range in data units.
    pub fn range(&self) -> IntervalRange {
        IntervalRange::new(self.grid_lo() as f64 * self.bucket, self.grid_hi() as f64 * self.bucket)
            .expect("radius is nonnegative")
    }

    pub fn width(&self) -> f64 {
        self.range().width()
    }
}

/// Private range of integer data.
///
/// Budget split: ε/8 for a coarse radius, ε/8 for a median over the coarse
/// interval, 3ε/4 for the radius around that median; β/3 to each step.
pub fn infinite_domain_range(data: &IntDataset, params: PrivacyParams, noise: &mut NoiseSource) -> Result<RangeEstimate> {
    if data.is_empty() {
        return Err(Error::invalid("range of an empty dataset"));
    }
    let eps = params.split(&[0.125, 0.125, 0.75])?;
    let mut ledger = Ledger::new();

    let coarse = infinite_domain_radius(data, params.part(eps[0], 3.0)?, noise)?;
    ledger.charge("coarse_radius", eps[0]);

    let clipped = clip(data, -coarse, coarse)?;
    let median_rank = (data.len() / 2).max(1);
    let center = finite_domain_quantile(
        &clipped,
        median_rank,
        IntDomain::new(-coarse, coarse)?,
        params.part(eps[1], 3.0)?,
        noise,
    )?;
    ledger.charge("median", eps[1]);

    let recentred = data.shifted(center)?;
    let radius = infinite_domain_radius(&recentred, params.part(eps[2], 3.0)?, noise)?;
    ledger.charge("recentred_radius", eps[2]);

    if center.checked_sub(radius).is_none() || center.checked_add(radius).is_none() {
        return Err(Error::OutOfRange("private range overflows the integer grid".into()));
    }
    Ok(RangeEstimate {
        center,
        radius,
        coarse_radius: coarse,
        bucket: 1.0,
        ledger,
    })
}

/// [`infinite_domain_range`] on real data discretized with bucket `b`.
pub fn range_real(data: &RealDataset, disc: Discretization, params: PrivacyParams, noise: &mut NoiseSource) -> Result<RangeEstimate> {
    let grid = quantize(data, disc)?;
    let mut estimate = infinite_domain_range(&grid, params, noise)?;
    estimate.bucket = disc.bucket();
    Ok(estimate)
}
