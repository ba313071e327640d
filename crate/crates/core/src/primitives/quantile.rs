//! Inverse-sensitivity quantile selection over a finite integer domain.
//!
//! The score of a candidate `y` is the path length: the fewest element
//! replacements after which `y` becomes the `tau`-th smallest value. It is
//! constant between consecutive distinct data values, so the exponential
//! mechanism runs over at most `2k + 1` segments (k distinct values) instead
//! of the whole domain.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primitives::dataset::IntDataset;
use crate::primitives::noise::NoiseSource;
use crate::primitives::params::{capped_log, PrivacyParams};

/// Closed integer interval `[lo, hi]` used as the output domain of the
/// quantile sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntDomain {
    lo: i64,
    hi: i64,
}

impl IntDomain {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty integer domain [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    /// Number of integers in the domain, `hi - lo + 1`.
    pub fn size(&self) -> u128 {
        (self.hi as i128 - self.lo as i128 + 1) as u128
    }

    pub fn contains(&self, y: i64) -> bool {
        self.lo <= y && y <= self.hi
    }
}

/// Path length from the rank counts at `y`: `below = #{X_i < y}`,
/// `at_most = #{X_i <= y}`.
fn score(tau: usize, below: usize, at_most: usize) -> usize {
    if below < tau && at_most >= tau {
        // y is the tau-th smallest already
        0
    } else if below >= tau {
        below + 1 - tau
    } else {
        tau - at_most
    }
}

/// Minimum number of element replacements that make `y` the `tau`-th
/// smallest value of `data` (1-based rank).
pub fn path_length(data: &IntDataset, tau: usize, y: i64) -> Result<usize> {
    check_rank(data, tau)?;
    Ok(score(tau, data.count_lt(y), data.count_le(y)))
}

fn check_rank(data: &IntDataset, tau: usize) -> Result<()> {
    if tau == 0 || tau > data.len() {
        return Err(Error::invalid(format!("rank {tau} outside [1, {}]", data.len())));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    start: i64,
    size: u64,
    len: usize,
}

fn segments(data: &IntDataset, tau: usize, domain: IntDomain) -> Result<Vec<Segment>> {
    let mut out = Vec::with_capacity(2 * data.len() + 1);
    let mut cursor = domain.lo() as i128;
    let mut below = 0usize;
    let values = data.values();
    let mut i = 0;
    while i < values.len() {
        let v = values[i];
        let mut j = i;
        while j < values.len() && values[j] == v {
            j += 1;
        }
        if cursor < v as i128 {
            out.push(Segment {
                start: cursor as i64,
                size: segment_size(v as i128 - cursor)?,
                len: score(tau, below, below),
            });
        }
        out.push(Segment {
            start: v,
            size: 1,
            len: score(tau, below, j),
        });
        below = j;
        cursor = v as i128 + 1;
        i = j;
    }
    if cursor <= domain.hi() as i128 {
        out.push(Segment {
            start: cursor as i64,
            size: segment_size(domain.hi() as i128 - cursor + 1)?,
            len: score(tau, below, below),
        });
    }
    Ok(out)
}

fn segment_size(size: i128) -> Result<u64> {
    u64::try_from(size).map_err(|_| Error::OutOfRange(format!("domain segment of {size} integers")))
}

/// Exponential mechanism with score `-path_length`: draws `y` from `domain`
/// with probability proportional to `exp(-epsilon * len(y) / 2)`.
///
/// Weights are accumulated in log space with a max shift. In noiseless mode
/// the smallest zero-score value is returned.
pub fn inverse_sensitivity_sample(
    data: &IntDataset,
    tau: usize,
    domain: IntDomain,
    epsilon: f64,
    noise: &mut NoiseSource,
) -> Result<i64> {
    check_rank(data, tau)?;
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::invalid(format!("epsilon must be finite and positive, got {epsilon}")));
    }
    if !data.values().iter().all(|v| domain.contains(*v)) {
        return Err(Error::invalid("dataset is not contained in the quantile domain"));
    }
    let segs = segments(data, tau, domain)?;

    if noise.is_noiseless() {
        let best = segs.iter().map(|s| s.len).min().expect("domain is nonempty");
        let seg = segs.iter().find(|s| s.len == best).expect("minimum exists");
        return Ok(seg.start);
    }

    let log_weights: Vec<f64> = segs
        .iter()
        .map(|s| (s.size as f64).ln() - epsilon * s.len as f64 / 2.0)
        .collect();
    let max = log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut cumulative = Vec::with_capacity(segs.len());
    let mut total = 0.0;
    for lw in &log_weights {
        total += (lw - max).exp();
        cumulative.push(total);
    }
    let target = noise.open_unit() * total;
    let idx = cumulative
        .partition_point(|c| *c <= target)
        .min(segs.len() - 1);
    let seg = segs[idx];
    let offset = if seg.size > 1 { noise.below(seg.size) } else { 0 };
    Ok(seg.start + offset as i64)
}

/// Private `tau`-th order statistic of integer data inside a known finite
/// domain.
///
/// Ranks closer than `(2/ε)·log(|domain|/β)` to either end are pulled inward
/// before sampling. Requires `n > (4/ε)·log(|domain|/β)`. A single-point
/// domain is returned directly.
pub fn finite_domain_quantile(
    data: &IntDataset,
    tau: usize,
    domain: IntDomain,
    params: PrivacyParams,
    noise: &mut NoiseSource,
) -> Result<i64> {
    check_rank(data, tau)?;
    if !data.values().iter().all(|v| domain.contains(*v)) {
        return Err(Error::invalid("dataset is not contained in the quantile domain"));
    }
    if domain.size() == 1 {
        return Ok(domain.lo());
    }
    let n = data.len();
    let margin = 2.0 / params.epsilon() * capped_log(domain.size() as f64 / params.beta());
    if (n as f64) <= 2.0 * margin {
        return Err(Error::InsufficientSample { n, required: 2.0 * margin });
    }
    let clamped = if tau as f64 <= margin {
        margin.ceil()
    } else if tau as f64 >= n as f64 - margin {
        (n as f64 - margin).floor()
    } else {
        tau as f64
    };
    let tau_prime = (clamped as usize).clamp(1, n);
    inverse_sensitivity_sample(data, tau_prime, domain, params.epsilon(), noise)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(v: &[i64]) -> IntDataset {
        IntDataset::from_ints(v.to_vec())
    }

    #[test]
    fn path_length_examples() {
        let d = ds(&[1, 2, 3, 4, 5]);
        assert_eq!(path_length(&d, 3, 3).unwrap(), 0);
        assert_eq!(path_length(&d, 3, 5).unwrap(), 2);
        assert_eq!(path_length(&d, 3, 0).unwrap(), 3);
        assert!(path_length(&d, 0, 1).is_err());
        assert!(path_length(&d, 6, 1).is_err());
    }

    #[test]
    fn path_length_with_duplicates() {
        let d = ds(&[2, 2, 2]);
        assert_eq!(path_length(&d, 2, 2).unwrap(), 0);
        assert_eq!(path_length(&d, 2, 3).unwrap(), 2);
        assert_eq!(path_length(&d, 2, 1).unwrap(), 2);
    }

    /// Minimum replacements by exhaustive search over replaced positions and
    /// replacement values drawn from the domain.
    fn brute_force(data: &[i64], tau: usize, y: i64, lo: i64, hi: i64) -> usize {
        let n = data.len();
        let mut best = usize::MAX;
        for mask in 0u32..(1 << n) {
            let k = mask.count_ones() as usize;
            if k >= best {
                continue;
            }
            let kept: Vec<i64> = (0..n).filter(|i| mask & (1 << i) == 0).map(|i| data[i]).collect();
            let span = (hi - lo + 1) as usize;
            let mut combo = vec![0usize; k];
            loop {
                let mut trial = kept.clone();
                trial.extend(combo.iter().map(|c| lo + *c as i64));
                trial.sort_unstable();
                if trial[tau - 1] == y {
                    best = best.min(k);
                    break;
                }
                let mut pos = 0;
                while pos < k {
                    combo[pos] += 1;
                    if combo[pos] < span {
                        break;
                    }
                    combo[pos] = 0;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
            }
        }
        best
    }

    #[test]
    fn closed_form_matches_brute_force_small() {
        let cases: &[&[i64]] = &[&[1, 2, 3, 4, 5], &[0, 0, 4], &[3, 3, 3, 1], &[5], &[0, 2, 2, 4]];
        for data in cases {
            let d = ds(data);
            for tau in 1..=data.len() {
                for y in 0..=5 {
                    assert_eq!(
                        path_length(&d, tau, y).unwrap(),
                        brute_force(d.values(), tau, y, 0, 5),
                        "data {data:?} tau {tau} y {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn segments_cover_domain() {
        let d = ds(&[2, 2, 5, 9]);
        let domain = IntDomain::new(0, 10).unwrap();
        let segs = segments(&d, 2, domain).unwrap();
        let total: u64 = segs.iter().map(|s| s.size).sum();
        assert_eq!(total as u128, domain.size());
        for s in &segs {
            for y in s.start..s.start + s.size as i64 {
                assert_eq!(path_length(&d, 2, y).unwrap(), s.len);
            }
        }
    }

    #[test]
    fn noiseless_point_mass_returns_value() {
        let d = IntDataset::from_ints(vec![4; 100]);
        let domain = IntDomain::new(0, 10).unwrap();
        let params = PrivacyParams::new(1.0, 0.1).unwrap();
        let mut noise = NoiseSource::noiseless(0);
        assert_eq!(finite_domain_quantile(&d, 50, domain, params, &mut noise).unwrap(), 4);
    }

    #[test]
    fn insufficient_sample() {
        let d = ds(&[5, 6]);
        let domain = IntDomain::new(0, 10).unwrap();
        let params = PrivacyParams::new(0.01, 0.1).unwrap();
        let mut noise = NoiseSource::new(0);
        assert!(matches!(
            finite_domain_quantile(&d, 1, domain, params, &mut noise),
            Err(Error::InsufficientSample { .. })
        ));
    }

    #[test]
    fn rejects_data_outside_domain() {
        let d = ds(&[5, 60]);
        let domain = IntDomain::new(0, 10).unwrap();
        let params = PrivacyParams::new(1.0, 0.1).unwrap();
        let mut noise = NoiseSource::new(0);
        assert!(matches!(
            finite_domain_quantile(&d, 1, domain, params, &mut noise),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn singleton_domain_short_circuits() {
        let d = IntDataset::from_ints(vec![0; 3]);
        let domain = IntDomain::new(0, 0).unwrap();
        let params = PrivacyParams::new(0.01, 0.1).unwrap();
        let mut noise = NoiseSource::new(0);
        assert_eq!(finite_domain_quantile(&d, 2, domain, params, &mut noise).unwrap(), 0);
    }

    #[test]
    fn huge_penalty_does_not_underflow() {
        let d = IntDataset::from_ints((0..2000).collect());
        let domain = IntDomain::new(-(1 << 40), 1 << 40).unwrap();
        let mut noise = NoiseSource::new(11);
        for _ in 0..50 {
            let y = inverse_sensitivity_sample(&d, 1000, domain, 50.0, &mut noise).unwrap();
            assert!((990..=1010).contains(&y), "{y}");
        }
    }

    #[test]
    fn output_stays_in_domain() {
        let d = ds(&[-3, 0, 0, 7, 8]);
        let domain = IntDomain::new(-10, 10).unwrap();
        let mut noise = NoiseSource::new(5);
        for tau in 1..=5 {
            for _ in 0..500 {
                let y = inverse_sensitivity_sample(&d, tau, domain, 0.1, &mut noise).unwrap();
                assert!(domain.contains(y));
            }
        }
    }
}
