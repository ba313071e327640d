use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::primitives::dataset::IntervalRange;
use crate::primitives::ledger::Ledger;
use crate::primitives::svt::DEFAULT_MAX_QUERIES;

/// Which power of two the IQR lower bound returns when the increasing
/// ladder stops at its first query and the decreasing ladder at `j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IqrBoundReturn {
    /// `2^-j`
    #[default]
    Pseudocode,
    /// `2^(-j+1)`, the value used in the utility analysis. Unlike the
    /// default this is scale-equivariant across the two ladders.
    Proof,
}

/// Noise calibration of the variance estimator's final Laplace step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarianceBudget {
    /// Scale `8·r/(εn)` as written. The clipped mean runs over `n/2`
    /// squared differences, so this step spends ε/4 and the total is 9ε/8.
    #[default]
    Naive,
    /// Scale `r/(n'·ε/8)`, which caps the total at ε.
    Conservative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    pub iqr_return: IqrBoundReturn,
    pub variance_budget: VarianceBudget,
    /// Query cap for each SVT ladder.
    pub max_queries: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            iqr_return: IqrBoundReturn::default(),
            variance_budget: VarianceBudget::default(),
            max_queries: DEFAULT_MAX_QUERIES,
        }
    }
}

/// Final estimate plus the diagnostics needed to audit it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateOutcome {
    pub estimate: f64,
    pub ledger: Ledger,
    /// Clipping range, when the estimator clips.
    pub chosen_range: Option<IntervalRange>,
    pub clipped_count: usize,
    /// Discretization bucket, when one was derived.
    pub bucket: Option<f64>,
    /// Laplace noise added in the last step (already part of `estimate`).
    pub laplace_draw: f64,
    /// Set when a variance estimate came out negative because of noise.
    pub negative: bool,
    /// Intermediate values keyed by name (bucket search output, quartiles,
    /// subsample size, ...).
    pub details: BTreeMap<String, f64>,
}

impl EstimateOutcome {
    pub(crate) fn new(estimate: f64, ledger: Ledger) -> Self {
        Self {
            estimate,
            ledger,
            chosen_range: None,
            clipped_count: 0,
            bucket: None,
            laplace_draw: 0.0,
            negative: false,
            details: BTreeMap::new(),
        }
    }
}
