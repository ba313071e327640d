//! Sparse vector technique: privately report the first query above a
//! threshold.

use crate::error::{Error, Result};
use crate::primitives::noise::{sample_laplace, NoiseSource};

/// Query cap for power-of-two ladders. 2^-1074 is the smallest positive
/// subnormal and 2^1023 the largest finite exponent, so both increasing and
/// decreasing ladders hit a fixed point before this many steps.
pub const DEFAULT_MAX_QUERIES: usize = 1100;

/// Runs SVT over a lazy stream of sensitivity-1 query answers.
///
/// The threshold is perturbed once with Lap(2/ε); each answer with Lap(4/ε).
/// Returns the 1-based index of the first answer whose noisy value is
/// strictly above the noisy threshold. At most `max_queries` answers are
/// pulled from `queries`.
pub fn svt<I>(
    threshold: f64,
    epsilon: f64,
    queries: I,
    max_queries: usize,
    noise: &mut NoiseSource,
) -> Result<usize>
where
    I: IntoIterator<Item = f64>,
{
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::invalid(format!("SVT epsilon must be finite and positive, got {epsilon}")));
    }
    if max_queries == 0 {
        return Err(Error::invalid("SVT needs max_queries >= 1"));
    }
    if threshold.is_nan() {
        return Err(Error::invalid("SVT threshold is NaN"));
    }
    let noisy_threshold = threshold + sample_laplace(2.0 / epsilon, noise)?;
    let query_scale = 4.0 / epsilon;
    let mut evaluated = 0;
    for answer in queries.into_iter().take(max_queries) {
        evaluated += 1;
        let noisy = answer + sample_laplace(query_scale, noise)?;
        if noisy > noisy_threshold {
            return Ok(evaluated);
        }
    }
    Err(Error::BudgetExhausted { queries: evaluated })
}
