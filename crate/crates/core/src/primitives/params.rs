use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Logarithm with the floor convention `log(x) = 1` for `x <= e`, applied
/// wherever a bound or threshold takes a log.
pub fn capped_log(x: f64) -> f64 {
    if x <= std::f64::consts::E {
        1.0
    } else {
        x.ln()
    }
}

/// Privacy budget ε and failure probability β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrivacyParams {
    epsilon: f64,
    beta: f64,
}

impl PrivacyParams {
    pub fn new(epsilon: f64, beta: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::invalid(format!("epsilon must be finite and positive, got {epsilon}")));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::invalid(format!("beta must lie in (0, 1), got {beta}")));
        }
        Ok(Self { epsilon, beta })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Splits ε by `fractions`, which must be positive and sum to one.
    ///
    /// The last part is computed as the remainder so the parts add back to ε
    /// up to a single rounding of the final addition.
    pub fn split(&self, fractions: &[f64]) -> Result<Vec<f64>> {
        if fractions.is_empty() || fractions.iter().any(|f| f.is_nan() || *f <= 0.0) {
            return Err(Error::invalid("split fractions must be positive"));
        }
        let total: f64 = fractions.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!("split fractions sum to {total}, not 1")));
        }
        let mut parts: Vec<f64> = fractions[..fractions.len() - 1]
            .iter()
            .map(|f| f * self.epsilon)
            .collect();
        let used: f64 = parts.iter().sum();
        parts.push(self.epsilon - used);
        Ok(parts)
    }

    /// Sub-call parameters: `epsilon` as given, β divided by `beta_divisor`.
    pub fn part(&self, epsilon: f64, beta_divisor: f64) -> Result<Self> {
        Self::new(epsilon, self.beta / beta_divisor)
    }
}
