use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::empirical::{quantile_real, radius_real, range_real, Discretization};
use crate::error::{Error, Result};
use crate::harness::guarantees as g;
use crate::oracles::DistributionSpec;
use crate::primitives::dataset::RealDataset;
use crate::primitives::noise::{derive_seed, NoiseSource};
use crate::primitives::params::PrivacyParams;
use crate::statistical::{estimate_iqr, estimate_iqr_lower_bound, estimate_mean, estimate_variance, Settings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    Mean,
    Variance,
    Iqr,
    Radius,
    Range,
    Quantile,
    IqrLowerBound,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 7] = [
        Self::Mean,
        Self::Variance,
        Self::Iqr,
        Self::Radius,
        Self::Range,
        Self::Quantile,
        Self::IqrLowerBound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Mean => "mean",
            Self::Variance => "variance",
            Self::Iqr => "iqr",
            Self::Radius => "radius",
            Self::Range => "range",
            Self::Quantile => "quantile",
            Self::IqrLowerBound => "iqr_lower_bound",
        }
    }

    /// Whether the estimator takes a caller-chosen bucket.
    pub fn uses_bucket(&self) -> bool {
        matches!(self, Self::Radius | Self::Range | Self::Quantile)
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s || k.name().replace('_', "-") == s)
            .ok_or_else(|| Error::invalid(format!("unknown estimator '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub spec: DistributionSpec,
    pub n: usize,
    pub epsilon: f64,
    pub beta: f64,
    pub trials: usize,
    pub seed: u64,
    pub estimator: EstimatorKind,
    pub noiseless: bool,
    pub settings: Settings,
    /// Constant of the soft sample-size conditions.
    pub c1: f64,
    /// Constant replacing big-O in the guarantee predicates.
    pub c: f64,
    /// Bucket for radius, range and quantile.
    pub bucket: f64,
    /// Rank for the quantile estimator; defaults to `max(1, floor(n/2))`.
    pub tau: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(spec: DistributionSpec, estimator: EstimatorKind, n: usize, epsilon: f64, beta: f64) -> Self {
        Self {
            spec,
            n,
            epsilon,
            beta,
            trials: 100,
            seed: 0,
            estimator,
            noiseless: false,
            settings: Settings::default(),
            c1: g::DEFAULT_C1,
            c: g::DEFAULT_C,
            bucket: 1.0,
            tau: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        PrivacyParams::new(self.epsilon, self.beta)?;
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.n < 2 {
            return Err(Error::invalid(format!("n must be at least 2, got {}", self.n)));
        }
        Discretization::new(self.bucket)?;
        if let Some(tau) = self.tau {
            if tau == 0 || tau > self.n {
                return Err(Error::invalid(format!("rank {tau} outside [1, {}]", self.n)));
            }
        }
        if !(self.c > 0.0 && self.c1 > 0.0) {
            return Err(Error::invalid("constants must be positive"));
        }
        Ok(())
    }

    fn tau(&self) -> usize {
        self.tau.unwrap_or((self.n / 2).max(1))
    }
}

/// One CSV row. Optional fields are empty when not applicable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: u64,
    pub seed: u64,
    pub estimate: Option<f64>,
    pub truth: Option<f64>,
    pub abs_error: Option<f64>,
    pub baseline_error: Option<f64>,
    pub guarantee_ok: bool,
    pub ledger_total: Option<f64>,
    /// Soft sample-size condition, evaluated on ground truth.
    pub precondition_ok: bool,
    /// `ok`, or the error code of a failed trial.
    pub status: String,
}

/// Population quantities computed once per experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truths {
    pub mean: Option<f64>,
    pub variance: Option<f64>,
    pub iqr: f64,
    pub phi_sixteenth: f64,
}

impl Truths {
    pub fn of(spec: &DistributionSpec) -> Result<Self> {
        Ok(Self {
            mean: spec.mean(),
            variance: spec.variance(),
            iqr: spec.iqr(),
            phi_sixteenth: spec.phi(1.0 / 16.0)?,
        })
    }
}

struct Outcome {
    estimate: f64,
    truth: Option<f64>,
    baseline: Option<f64>,
    ok: bool,
    ledger_total: f64,
}

fn sample_quartile_gap(data: &RealDataset) -> f64 {
    let n = data.len();
    data.at_rank((3 * n / 4) as i64) - data.at_rank((n / 4) as i64)
}

fn evaluate(cfg: &ExperimentConfig, truths: &Truths, data: &RealDataset, noise: &mut NoiseSource) -> Result<Outcome> {
    let params = PrivacyParams::new(cfg.epsilon, cfg.beta)?;
    let (eps, beta, c) = (cfg.epsilon, cfg.beta, cfg.c);
    let disc = Discretization::new(cfg.bucket)?;
    let b = cfg.bucket;
    Ok(match cfg.estimator {
        EstimatorKind::Mean => {
            let out = estimate_mean(data, params, &cfg.settings, noise)?;
            let bucket = out.bucket.unwrap_or(b);
            let sample = data.mean().unwrap_or(f64::NAN);
            Outcome {
                estimate: out.estimate,
                truth: truths.mean,
                baseline: truths.mean.map(|m| (sample - m).abs()),
                ok: g::mean_ok(out.estimate, data, bucket, eps, beta, c),
                ledger_total: out.ledger.total(),
            }
        }
        EstimatorKind::Variance => {
            let out = estimate_variance(data, params, &cfg.settings, noise)?;
            let bucket = out.bucket.unwrap_or(b);
            let sample = g::sample_variance(data);
            let target = truths.variance.unwrap_or(sample);
            Outcome {
                estimate: out.estimate,
                truth: truths.variance,
                baseline: truths.variance.map(|v| (sample - v).abs()),
                ok: g::variance_ok(out.estimate, target, data, bucket, eps, beta, c),
                ledger_total: out.ledger.total(),
            }
        }
        EstimatorKind::Iqr => {
            let out = estimate_iqr(data, params, &cfg.settings, noise)?;
            let bucket = out.bucket.unwrap_or(b);
            Outcome {
                estimate: out.estimate,
                truth: Some(truths.iqr),
                baseline: Some((sample_quartile_gap(data) - truths.iqr).abs()),
                ok: g::iqr_ok(out.estimate, data, bucket, eps, beta, c),
                ledger_total: out.ledger.total(),
            }
        }
        EstimatorKind::IqrLowerBound => {
            let out = estimate_iqr_lower_bound(data, params, &cfg.settings, noise)?;
            Outcome {
                estimate: out.value,
                truth: Some(truths.iqr),
                baseline: None,
                ok: g::iqr_lower_bound_ok(out.value, truths.phi_sixteenth, truths.iqr),
                ledger_total: out.ledger.total(),
            }
        }
        EstimatorKind::Radius => {
            let est = radius_real(data, disc, params, noise)?;
            Outcome {
                estimate: est,
                truth: Some(data.radius()),
                baseline: None,
                ok: g::radius_ok(est, data, b),
                ledger_total: eps,
            }
        }
        EstimatorKind::Range => {
            let est = range_real(data, disc, params, noise)?;
            let range = est.range();
            Outcome {
                estimate: range.width(),
                truth: Some(data.width()),
                baseline: None,
                ok: g::range_ok(&range, data, b, eps, beta, c),
                ledger_total: est.ledger.total(),
            }
        }
        EstimatorKind::Quantile => {
            let tau = cfg.tau();
            let est = quantile_real(data, tau, disc, params, noise)?;
            Outcome {
                estimate: est.value,
                truth: Some(data.at_rank(tau as i64)),
                baseline: None,
                ok: g::quantile_ok(tau, est.value, data, b, eps, beta, c),
                ledger_total: est.ledger.total(),
            }
        }
    })
}

fn precondition(cfg: &ExperimentConfig, truths: &Truths, data: &RealDataset) -> bool {
    if cfg.estimator.uses_bucket() {
        g::empirical_condition(data, cfg.bucket, cfg.epsilon, cfg.beta, cfg.c1)
    } else {
        g::statistical_condition(data.len(), truths.phi_sixteenth, truths.iqr, cfg.epsilon, cfg.beta, cfg.c1)
    }
}

/// Runs one trial. The sample and the mechanism draw from separate streams
/// derived from the trial seed, so the noiseless flag does not change the
/// data.
pub fn run_trial(cfg: &ExperimentConfig, truths: &Truths, trial: u64) -> TrialRow {
    let seed = derive_seed(cfg.seed, trial);
    let mut data_noise = NoiseSource::new(derive_seed(seed, 0));
    let mut mech_noise = NoiseSource::with_mode(derive_seed(seed, 1), cfg.noiseless);
    let mut row = TrialRow {
        trial,
        seed,
        estimate: None,
        truth: None,
        abs_error: None,
        baseline_error: None,
        guarantee_ok: false,
        ledger_total: None,
        precondition_ok: false,
        status: "ok".into(),
    };
    let data = match cfg.spec.sample(cfg.n, &mut data_noise) {
        Ok(d) => d,
        Err(e) => {
            row.status = e.code().into();
            return row;
        }
    };
    row.precondition_ok = precondition(cfg, truths, &data);
    match evaluate(cfg, truths, &data, &mut mech_noise) {
        Ok(out) => {
            row.estimate = Some(out.estimate);
            row.truth = out.truth;
            row.abs_error = out.truth.map(|t| (out.estimate - t).abs());
            row.baseline_error = out.baseline;
            row.guarantee_ok = out.ok;
            row.ledger_total = Some(out.ledger_total);
        }
        Err(e) => row.status = e.code().into(),
    }
    row
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub trials: usize,
    pub succeeded: usize,
    /// Fraction of all trials (failed ones count as misses).
    pub guarantee_rate: f64,
    pub precondition_rate: f64,
    pub median_abs_error: Option<f64>,
    pub q10_abs_error: Option<f64>,
    pub q90_abs_error: Option<f64>,
    pub median_baseline_error: Option<f64>,
    pub max_ledger_total: Option<f64>,
}

/// Linear-interpolation quantile of unsorted values; `None` when empty.
pub fn quantile_of(values: &[f64], p: f64) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let pos = p.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    Some(v[lo] + (pos - lo as f64) * (v[hi] - v[lo]))
}

impl Aggregate {
    pub fn from_rows(rows: &[TrialRow]) -> Self {
        let t = rows.len().max(1) as f64;
        let errors: Vec<f64> = rows.iter().filter_map(|r| r.abs_error).collect();
        let baseline: Vec<f64> = rows.iter().filter_map(|r| r.baseline_error).collect();
        Self {
            trials: rows.len(),
            succeeded: rows.iter().filter(|r| r.status == "ok").count(),
            guarantee_rate: rows.iter().filter(|r| r.guarantee_ok).count() as f64 / t,
            precondition_rate: rows.iter().filter(|r| r.precondition_ok).count() as f64 / t,
            median_abs_error: quantile_of(&errors, 0.5),
            q10_abs_error: quantile_of(&errors, 0.1),
            q90_abs_error: quantile_of(&errors, 0.9),
            median_baseline_error: quantile_of(&baseline, 0.5),
            max_ledger_total: rows.iter().filter_map(|r| r.ledger_total).reduce(f64::max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub truths: Truths,
    pub rows: Vec<TrialRow>,
    pub aggregate: Aggregate,
}

/// Runs all trials in parallel; rows come back ordered by trial index.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let truths = Truths::of(&cfg.spec)?;
    let rows: Vec<TrialRow> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(cfg, &truths, t))
        .collect();
    let aggregate = Aggregate::from_rows(&rows);
    Ok(ExperimentReport {
        config: cfg.clone(),
        truths,
        rows,
        aggregate,
    })
}
