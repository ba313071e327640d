//! Per-call record of how a privacy budget was spent.

use serde::{Deserialize, Serialize};

/// Subsampled step: `inner_epsilon` was spent on an `fraction`-subsample,
/// which is `amplified`-DP with respect to the full data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Amplification {
    pub inner_epsilon: f64,
    pub fraction: f64,
    pub amplified: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub step: String,
    /// Budget charged against the caller's ε under basic composition.
    pub epsilon: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub amplification: Option<Amplification>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Ledger {
    entries: Vec<LedgerEntry>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(step: impl Into<String>, epsilon: f64) -> Self {
        let mut ledger = Self::new();
        ledger.charge(step, epsilon);
        ledger
    }

    pub fn charge(&mut self, step: impl Into<String>, epsilon: f64) {
        debug_assert!(epsilon >= 0.0);
        self.entries.push(LedgerEntry {
            step: step.into(),
            epsilon,
            amplification: None,
        });
    }

    pub fn charge_amplified(&mut self, step: impl Into<String>, epsilon: f64, amplification: Amplification) {
        debug_assert!(amplification.amplified <= epsilon * (1.0 + 1e-12));
        self.entries.push(LedgerEntry {
            step: step.into(),
            epsilon,
            amplification: Some(amplification),
        });
    }

    /// Appends a sub-call's entries, prefixing each step name.
    pub fn absorb(&mut self, prefix: &str, other: Ledger) {
        for mut entry in other.entries {
            entry.step = format!("{prefix}/{}", entry.step);
            self.entries.push(entry);
        }
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.epsilon).sum()
    }
}
