//! Universal estimators for i.i.d. samples from an unknown distribution.
//!
//! None of these take bounds on the data, its scale or its location. A
//! private lower bound on the interquartile range sets the discretization,
//! and subsampling amplification lets the clipping range be found on a small
//! subsample at little cost.

pub mod iqr;
pub mod iqr_lower_bound;
pub mod mean;
pub mod outcome;
pub mod pairs;
pub mod variance;

pub use iqr::estimate_iqr;
pub use iqr_lower_bound::{estimate_iqr_lower_bound, iqr_lower_bound_from_differences, IqrLowerBound};
pub use mean::estimate_mean;
pub use outcome::{EstimateOutcome, IqrBoundReturn, Settings, VarianceBudget};
pub use pairs::{pair_differences, DifferenceMode, PairedDifferences};
pub use variance::{clamp_variance, estimate_variance};
