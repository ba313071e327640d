//! Private radius, range, mean and quantile of integer data with no a-priori
//! bounds, and bucketed wrappers that run them on real-valued data.
//!
//! Sample-size conditions depend on private quantities (the
//! data's radius), so none of these functions check them; privacy holds
//! unconditionally. The Monte-Carlo harness checks the conditions against
//! ground truth.

pub mod discretize;
pub mod mean;
pub mod quantile;
pub mod radius;
pub mod range;

pub use discretize::{dequantize, quantize, quantize_value, Discretization};
pub use mean::{infinite_domain_mean, mean_real, MeanEstimate};
pub use quantile::{infinite_domain_quantile, quantile_real, QuantileEstimate};
pub use radius::{infinite_domain_radius, radius_real};
pub use range::{infinite_domain_range, range_real, RangeEstimate};
