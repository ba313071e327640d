use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primitives::dataset::RealDataset;
use crate::primitives::noise::NoiseSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DifferenceMode {
    /// `|X - X'|`
    Absolute,
    /// `(X - X')^2`
    Squared,
}

/// Differences over a uniformly random perfect matching of the sample.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedDifferences {
    values: RealDataset,
}

impl PairedDifferences {
    pub fn values(&self) -> &RealDataset {
        &self.values
    }

    pub fn into_dataset(self) -> RealDataset {
        self.values
    }

    /// Number of pairs, `floor(n / 2)`.
    pub fn n_prime(&self) -> usize {
        self.values.len()
    }

    /// Wraps differences that were formed elsewhere. Values must be
    /// nonnegative.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| v.is_nan() || *v < 0.0) {
            return Err(Error::invalid("paired differences must be nonnegative"));
        }
        Ok(Self {
            values: RealDataset::new(values)?,
        })
    }
}

/// Shuffles a copy of the sample and pairs adjacent elements. With odd `n`
/// the last element after shuffling (a uniformly random one) is dropped.
pub fn pair_differences(data: &RealDataset, mode: DifferenceMode, noise: &mut NoiseSource) -> Result<PairedDifferences> {
    if data.len() < 2 {
        return Err(Error::invalid(format!("pairing needs at least 2 samples, got {}", data.len())));
    }
    let mut shuffled = data.values().to_vec();
    noise.shuffle(&mut shuffled);
    let diffs = shuffled
        .chunks_exact(2)
        .map(|p| {
            let d = p[0] - p[1];
            match mode {
                DifferenceMode::Absolute => d.abs(),
                DifferenceMode::Squared => d * d,
            }
        })
        .collect();
    PairedDifferences::from_values(diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let mut noise = NoiseSource::new(1);
        let d = RealDataset::new(vec![3.0; 4]).unwrap();
        let g = pair_differences(&d, DifferenceMode::Absolute, &mut noise).unwrap();
        assert_eq!(g.values().values(), &[0.0, 0.0]);

        let d = RealDataset::new(vec![0.0, 4.0]).unwrap();
        let h = pair_differences(&d, DifferenceMode::Squared, &mut noise).unwrap();
        assert_eq!(h.values().values(), &[16.0]);

        let d = RealDataset::new(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(pair_differences(&d, DifferenceMode::Absolute, &mut noise).unwrap().n_prime(), 2);

        let d = RealDataset::new(vec![1.0]).unwrap();
        assert!(pair_differences(&d, DifferenceMode::Absolute, &mut noise).is_err());
    }

    #[test]
    fn matching_is_random() {
        // {0, 1, 10, 11}: the three matchings give distinct sorted G.
        let d = RealDataset::new(vec![0.0, 1.0, 10.0, 11.0]).unwrap();
        let mut noise = NoiseSource::new(77);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            let g = pair_differences(&d, DifferenceMode::Absolute, &mut noise).unwrap();
            seen.insert(g.values().values().iter().map(|v| *v as i64).collect::<Vec<_>>());
        }
        assert_eq!(seen.len(), 3);
    }
}
