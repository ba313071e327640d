//! Mechanism layer: noise, SVT, inverse-sensitivity quantiles, clipping and
//! subsampling amplification.

pub mod amplify;
pub mod clip;
pub mod dataset;
pub mod ledger;
pub mod noise;
pub mod params;
pub mod quantile;
pub mod svt;

pub use amplify::{amplified_epsilon, deamplify, subsample};
pub use clip::{clip, clipped_mean};
pub use dataset::{Dataset, IntDataset, IntervalRange, RealDataset};
pub use ledger::{Amplification, Ledger, LedgerEntry};
pub use noise::{derive_seed, sample_laplace, NoiseSource};
pub use params::{capped_log, PrivacyParams};
pub use quantile::{finite_domain_quantile, inverse_sensitivity_sample, path_length, IntDomain};
pub use svt::{svt, DEFAULT_MAX_QUERIES};
