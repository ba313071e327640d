use crate::empirical::discretize::{quantize, Discretization};
use crate::error::{Error, Result};
use crate::primitives::dataset::{IntDataset, RealDataset};
use crate::primitives::noise::NoiseSource;
use crate::primitives::params::{capped_log, PrivacyParams};
use crate::primitives::svt::{svt, DEFAULT_MAX_QUERIES};

/// Largest exponent of the integer ladder; `2^62` already covers every value
/// the discretization admits.
const MAX_LADDER_EXPONENT: usize = 62;

/// `Count(D, 0), Count(D, 2^0), Count(D, 2^1), ...`, evaluated lazily.
fn count_ladder(data: &IntDataset) -> impl Iterator<Item = f64> + '_ {
    let mut previous = 0usize;
    (1usize..).map(move |i| {
        let x = if i == 1 { 0 } else { 1i64 << (i - 2).min(MAX_LADDER_EXPONENT) };
        let count = data.count_within(x).expect("ladder thresholds are nonnegative");
        debug_assert!(count >= previous, "count ladder must be nondecreasing");
        previous = count;
        count as f64
    })
}

/// Private radius of integer data: a power of two (or zero) that is at most
/// twice `max |X_i|` and leaves few elements outside `[-r, r]`.
///
/// SVT runs with threshold `n - (6/ε)·log(2/β)` over the count ladder; stop
/// index 1 maps to 0, index `i >= 2` to `2^(i-2)`.
pub fn infinite_domain_radius(data: &IntDataset, params: PrivacyParams, noise: &mut NoiseSource) -> Result<i64> {
    if data.is_empty() {
        return Err(Error::invalid("radius of an empty dataset"));
    }
    let eps = params.epsilon();
    let threshold = data.len() as f64 - 6.0 / eps * capped_log(2.0 / params.beta());
    let stop = svt(threshold, eps, count_ladder(data), DEFAULT_MAX_QUERIES, noise)?;
    match stop {
        1 => Ok(0),
        i if i - 2 <= MAX_LADDER_EXPONENT => Ok(1i64 << (i - 2)),
        i => Err(Error::OutOfRange(format!("radius 2^{} exceeds the integer grid", i - 2))),
    }
}

/// [`infinite_domain_radius`] on real data discretized with bucket `b`;
/// the result is in data units.
pub fn radius_real(data: &RealDataset, disc: Discretization, params: PrivacyParams, noise: &mut NoiseSource) -> Result<f64> {
    let grid = quantize(data, disc)?;
    Ok(infinite_domain_radius(&grid, params, noise)? as f64 * disc.bucket())
}
