//! Bucketing of the real line onto the integer grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primitives::dataset::{IntDataset, RealDataset};

/// Grid indices are kept within `±2^52`, where every integer is exactly
/// representable as an `f64`.
pub const GRID_LIMIT: f64 = (1u64 << 52) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Discretization {
    bucket: f64,
}

impl Discretization {
    pub fn new(bucket: f64) -> Result<Self> {
        if !(bucket.is_finite() && bucket > 0.0) {
            return Err(Error::invalid(format!("bucket size must be finite and positive, got {bucket}")));
        }
        Ok(Self { bucket })
    }

    /// Unit buckets: integer data passes through unchanged.
    pub fn unit() -> Self {
        Self { bucket: 1.0 }
    }

    pub fn bucket(&self) -> f64 {
        self.bucket
    }
}

/// Nearest grid index of `x`, ties rounded toward +∞.
pub fn quantize_value(x: f64, disc: Discretization) -> Result<i64> {
    let scaled = x / disc.bucket;
    if !scaled.is_finite() || scaled.abs() > GRID_LIMIT {
        return Err(Error::OutOfRange(format!("{x} / {} is beyond the integer grid", disc.bucket)));
    }
    Ok((scaled + 0.5).floor() as i64)
}

pub fn quantize(data: &RealDataset, disc: Discretization) -> Result<IntDataset> {
    let grid = data
        .values()
        .iter()
        .map(|x| quantize_value(*x, disc))
        .collect::<Result<Vec<_>>>()?;
    // rounding is monotone, so the grid values are already sorted
    Ok(IntDataset::from_sorted_unchecked(grid))
}

pub fn dequantize(k: i64, disc: Discretization) -> f64 {
    k as f64 * disc.bucket
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let half = Discretization::new(0.5).unwrap();
        assert_eq!(quantize_value(0.74, half).unwrap(), 1);
        assert!((dequantize(1, half) - 0.74).abs() <= 0.25);
        assert_eq!(quantize_value(0.0, Discretization::new(3.7).unwrap()).unwrap(), 0);
        assert_eq!(quantize_value(-1.25, half).unwrap(), -2);
        assert_eq!(quantize_value(1.25, half).unwrap(), 3);
    }

    #[test]
    fn overflow_is_reported() {
        let tiny = Discretization::new(1e-300).unwrap();
        assert!(matches!(quantize_value(1.0, tiny), Err(Error::OutOfRange(_))));
        assert!(Discretization::new(0.0).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_within_half_bucket(x in -1e6f64..1e6, b in 1e-3f64..1e3) {
            let disc = Discretization::new(b).unwrap();
            let k = quantize_value(x, disc).unwrap();
            prop_assert!((dequantize(k, disc) - x).abs() <= b / 2.0 * (1.0 + 1e-9));
        }

        #[test]
        fn grid_points_are_fixed(k in -1_000_000i64..1_000_000, e in -8i32..8) {
            let disc = Discretization::new(2f64.powi(e)).unwrap();
            prop_assert_eq!(quantize_value(dequantize(k, disc), disc).unwrap(), k);
        }
    }
}
