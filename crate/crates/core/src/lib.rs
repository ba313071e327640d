//! Universal differentially private estimators under pure ε-DP.
//!
//! The crate is layered bottom-up:
//!
//! - [`primitives`]: Laplace noise, the sparse vector technique, the
//!   inverse-sensitivity quantile sampler over finite integer domains,
//!   clipping, and subsampling amplification.
//! - [`empirical`]: radius, range, mean and quantile estimators over the
//!   unbounded integer line, plus bucketed wrappers for real-valued data.
//! - [`statistical`]: the universal estimators for i.i.d. samples (IQR lower
//!   bound, mean, variance, IQR) that need no a-priori bounds on the data.
//! - [`oracles`]: test distributions and independent numerical ground truth.
//! - [`harness`]: seeded Monte-Carlo experiments that check the utility
//!   guarantees trial by trial.
//!
//! All randomness flows through a single [`NoiseSource`]. The generator is
//! seedable and not cryptographically secure: the privacy guarantee holds
//! relative to ideal randomness, and floating-point side channels are not
//! mitigated. This is a research artifact.

pub mod empirical;
pub mod error;
pub mod harness;
pub mod oracles;
pub mod primitives;
pub mod statistical;

pub use error::{Error, Result};
pub use primitives::dataset::{Dataset, IntDataset, IntervalRange, RealDataset};
pub use primitives::noise::NoiseSource;
pub use primitives::params::{capped_log, PrivacyParams};
