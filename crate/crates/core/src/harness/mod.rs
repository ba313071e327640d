//! Seeded Monte-Carlo experiments: sample from a test distribution, run an
//! estimator, and score each trial against ground truth.

pub mod experiment;
pub mod guarantees;

pub use experiment::{
    quantile_of, run_experiment, run_trial, Aggregate, EstimatorKind, ExperimentConfig, ExperimentReport, TrialRow, Truths,
};
