use crate::error::{Error, Result};
use crate::primitives::dataset::{Dataset, IntervalRange, Value};

/// Projects every element into `[lo, hi]`. Clipping is monotone, so the
/// output stays sorted.
pub fn clip<T: Value>(data: &Dataset<T>, lo: T, hi: T) -> Result<Dataset<T>> {
    if lo > hi {
        return Err(Error::invalid(format!("invalid clip bounds [{lo:?}, {hi:?}]")));
    }
    let values = data
        .values()
        .iter()
        .map(|v| if *v < lo { lo } else if *v > hi { hi } else { *v })
        .collect();
    Ok(Dataset::from_sorted_unchecked(values))
}

/// Mean of the data after clipping into `range`. Replacing one element moves
/// the result by at most `range.width() / n`.
pub fn clipped_mean<T: Value>(data: &Dataset<T>, range: &IntervalRange) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::invalid("clipped mean of an empty dataset"));
    }
    let sum: f64 = data
        .values()
        .iter()
        .map(|v| v.to_f64().clamp(range.lo(), range.hi()))
        .sum();
    // summation rounding can step just outside the range
    Ok((sum / data.len() as f64).clamp(range.lo(), range.hi()))
}
