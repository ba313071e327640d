//! Sorted multisets of samples and closed intervals on the value axis.

use std::cmp::Ordering;
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element type of a [`Dataset`]: `f64` for real data, `i64` for data on the
/// integer grid.
pub trait Value: Copy + PartialOrd + Debug + Send + Sync + 'static {
    fn to_f64(self) -> f64;
    fn order(&self, other: &Self) -> Ordering;
    fn negate(self) -> Self;
    fn is_valid(self) -> bool;
}

impl Value for f64 {
    fn to_f64(self) -> f64 {
        self
    }
    fn order(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
    fn negate(self) -> Self {
        -self
    }
    fn is_valid(self) -> bool {
        self.is_finite()
    }
}

impl Value for i64 {
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn order(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn negate(self) -> Self {
        self.saturating_neg()
    }
    fn is_valid(self) -> bool {
        true
    }
}

/// Immutable sorted multiset `X_1 <= ... <= X_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset<T: Value> {
    values: Vec<T>,
}

pub type RealDataset = Dataset<f64>;
pub type IntDataset = Dataset<i64>;

impl<T: Value> Dataset<T> {
    /// Sorts `values`; rejects NaN and infinities.
    pub fn new(mut values: Vec<T>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_valid()) {
            return Err(Error::invalid(format!("non-finite sample value {bad:?}")));
        }
        values.sort_unstable_by(T::order);
        Ok(Self { values })
    }

    pub(crate) fn from_sorted_unchecked(values: Vec<T>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        Self { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<T> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<T> {
        self.values.last().copied()
    }

    /// `X_rank` for a 1-based rank, clamped so that ranks below 1 read `X_1`
    /// and ranks above `n` read `X_n`. Panics on an empty dataset.
    pub fn at_rank(&self, rank: i64) -> T {
        let n = self.values.len() as i64;
        let idx = rank.clamp(1, n) - 1;
        self.values[idx as usize]
    }

    /// Width `X_n - X_1`; zero for an empty dataset.
    pub fn width(&self) -> f64 {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi.to_f64() - lo.to_f64(),
            _ => 0.0,
        }
    }

    /// Radius `max_i |X_i|`; zero for an empty dataset.
    pub fn radius(&self) -> f64 {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => lo.to_f64().abs().max(hi.to_f64().abs()),
            _ => 0.0,
        }
    }

    /// Number of elements strictly below `x`.
    pub fn count_lt(&self, x: T) -> usize {
        self.values.partition_point(|v| v.order(&x) == Ordering::Less)
    }

    /// Number of elements at most `x`.
    pub fn count_le(&self, x: T) -> usize {
        self.values.partition_point(|v| v.order(&x) != Ordering::Greater)
    }

    /// `|D ∩ [-x, x]|` by binary search.
    pub fn count_within(&self, x: T) -> Result<usize> {
        if !x.is_valid() && x.to_f64() != f64::INFINITY {
            return Err(Error::invalid(format!("count threshold must be a number, got {x:?}")));
        }
        if x.to_f64() < 0.0 {
            return Err(Error::invalid(format!("count threshold must be nonnegative, got {x:?}")));
        }
        Ok(self.count_le(x) - self.count_lt(x.negate()))
    }

    /// Number of elements outside the closed interval `range`.
    pub fn count_outside(&self, range: &IntervalRange) -> usize {
        self.values
            .iter()
            .filter(|v| {
                let v = v.to_f64();
                v < range.lo() || v > range.hi()
            })
            .count()
    }

    pub fn mean(&self) -> Option<f64> {
        if self.values.is_empty() {
            return None;
        }
        Some(self.values.iter().map(|v| v.to_f64()).sum::<f64>() / self.values.len() as f64)
    }

    /// Smallest `t >= 0` with `X_{tau-t} - slack <= value <= X_{tau+t} + slack`
    /// under the clamping convention of [`Dataset::at_rank`]. `None` when the
    /// value lies outside `[X_1 - slack, X_n + slack]`, where no `t` works.
    pub fn rank_error(&self, tau: usize, value: f64, slack: f64) -> Option<usize> {
        let vals: Vec<f64> = self.values.iter().map(|v| v.to_f64()).collect();
        let n = vals.len();
        if n == 0 {
            return None;
        }
        let first_at_least = vals.partition_point(|v| *v < value - slack) + 1;
        let last_at_most = vals.partition_point(|v| *v <= value + slack);
        if first_at_least > n || last_at_most == 0 {
            return None;
        }
        let up = first_at_least.saturating_sub(tau);
        let down = tau.saturating_sub(last_at_most);
        Some(up.max(down))
    }
}

impl RealDataset {
    pub fn from_reals(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

impl IntDataset {
    pub fn from_ints(mut values: Vec<i64>) -> Self {
        values.sort_unstable();
        Self { values }
    }

    /// Subtracts `shift` from every element.
    pub fn shifted(&self, shift: i64) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|v| v.checked_sub(shift))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::OutOfRange(format!("shifting by {shift} overflows i64")))?;
        Ok(Self::from_sorted_unchecked(values))
    }
}

/// Closed interval `[lo, hi]` on the value axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalRange {
    lo: f64,
    hi: f64,
}

impl IntervalRange {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::invalid(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    /// `[center - half_width, center + half_width]`.
    pub fn centered(center: f64, half_width: f64) -> Result<Self> {
        Self::new(center - half_width, center + half_width)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            lo: self.lo * factor,
            hi: self.hi * factor,
        }
    }
}
