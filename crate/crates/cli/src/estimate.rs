use serde::Serialize;
use serde_json::{json, Map, Value};
use unidp::empirical::{quantile_real, radius_real, range_real, Discretization};
use unidp::harness::EstimatorKind;
use unidp::primitives::ledger::{Ledger, LedgerEntry};
use unidp::statistical::{estimate_iqr, estimate_iqr_lower_bound, estimate_mean, estimate_variance};
use unidp::{NoiseSource, PrivacyParams, RealDataset};

use crate::args::MechanismArgs;
use crate::failure::Failure;

#[derive(Debug, Serialize)]
pub struct LedgerReport {
    pub entries: Vec<LedgerEntry>,
    pub total: f64,
}

impl From<&Ledger> for LedgerReport {
    fn from(ledger: &Ledger) -> Self {
        Self {
            entries: ledger.entries().to_vec(),
            total: ledger.total(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EstimateReport {
    pub estimator: EstimatorKind,
    pub estimate: Value,
    pub epsilon: f64,
    pub beta: f64,
    pub seed: u64,
    pub noiseless: bool,
    pub n: usize,
    pub ledger: LedgerReport,
    pub diagnostics: Map<String, Value>,
}

/// Serializes `outcome` and moves everything except the estimate and the
/// ledger into the diagnostics map.
fn split<T: Serialize>(outcome: &T, estimate_key: &str) -> Result<Map<String, Value>, Failure> {
    let Value::Object(mut map) = serde_json::to_value(outcome)? else {
        unreachable!("estimator outcomes serialize as objects")
    };
    map.remove(estimate_key);
    map.remove("ledger");
    Ok(map)
}

pub fn run(
    data: &RealDataset,
    estimator: EstimatorKind,
    mech: &MechanismArgs,
) -> Result<EstimateReport, Failure> {
    let params = PrivacyParams::new(mech.epsilon, mech.beta)?;
    let settings = mech.settings();
    let mut noise = NoiseSource::with_mode(mech.seed, mech.noiseless);
    let disc = Discretization::new(mech.bucket)?;

    let (estimate, ledger, diagnostics) = match estimator {
        EstimatorKind::Mean => {
            let out = estimate_mean(data, params, &settings, &mut noise)?;
            (json!(out.estimate), out.ledger.clone(), split(&out, "estimate")?)
        }
        EstimatorKind::Variance => {
            let out = estimate_variance(data, params, &settings, &mut noise)?;
            (json!(out.estimate), out.ledger.clone(), split(&out, "estimate")?)
        }
        EstimatorKind::Iqr => {
            let out = estimate_iqr(data, params, &settings, &mut noise)?;
            (json!(out.estimate), out.ledger.clone(), split(&out, "estimate")?)
        }
        EstimatorKind::IqrLowerBound => {
            let out = estimate_iqr_lower_bound(data, params, &settings, &mut noise)?;
            (json!(out.value), out.ledger.clone(), split(&out, "value")?)
        }
        EstimatorKind::Radius => {
            let r = radius_real(data, disc, params, &mut noise)?;
            let mut diag = Map::new();
            diag.insert("bucket".into(), json!(mech.bucket));
            (json!(r), Ledger::single("radius", mech.epsilon), diag)
        }
        EstimatorKind::Range => {
            let out = range_real(data, disc, params, &mut noise)?;
            let range = out.range();
            let mut diag = split(&out, "range")?;
            diag.insert("outside".into(), json!(data.count_outside(&range)));
            (serde_json::to_value(range)?, out.ledger.clone(), diag)
        }
        EstimatorKind::Quantile => {
            let tau = mech.tau.unwrap_or((data.len() / 2).max(1));
            let out = quantile_real(data, tau, disc, params, &mut noise)?;
            (json!(out.value), out.ledger.clone(), split(&out, "value")?)
        }
    };

    Ok(EstimateReport {
        estimator,
        estimate,
        epsilon: mech.epsilon,
        beta: mech.beta,
        seed: mech.seed,
        noiseless: mech.noiseless,
        n: data.len(),
        ledger: LedgerReport::from(&ledger),
        diagnostics,
    })
}
