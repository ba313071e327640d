//! Ground truth for test distributions: samplers and numerical oracles for
//! the population quantities the estimators' guarantees are stated in.

pub mod population;
pub mod quadrature;
pub mod spec;
pub mod width;

pub use population::{population_params, Evaluated, PopulationParams, PopulationRequest, TailPair};
pub use quadrature::integrate;
pub use spec::DistributionSpec;
pub use width::{monte_carlo_quantile, squared_difference_width, statistical_width, MonteCarloQuantile, DEFAULT_TRIALS};
