//! Population quantities of a [`DistributionSpec`]: moments, quartiles,
//! highest-density widths, quartile densities and tail expectations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::oracles::quadrature::integrate;
use crate::oracles::spec::DistributionSpec;

const ABS_TOL: f64 = 1e-10;

impl DistributionSpec {
    /// `None` when the mean is infinite or undefined.
    pub fn mean(&self) -> Option<f64> {
        match *self {
            Self::Gaussian { mu, .. } => Some(mu),
            Self::Uniform { a, b } => Some(0.5 * (a + b)),
            Self::StudentT { nu, loc, .. } => (nu > 1.0).then_some(loc),
            Self::Pareto { shape, scale } => (shape > 1.0).then(|| shape * scale / (shape - 1.0)),
            Self::LogNormal { mu, sigma } => Some((mu + 0.5 * sigma * sigma).exp()),
            Self::PointMass { c } => Some(c),
        }
    }

    /// `None` when the variance is infinite or undefined.
    pub fn variance(&self) -> Option<f64> {
        match *self {
            Self::Gaussian { sigma, .. } => Some(sigma * sigma),
            Self::Uniform { a, b } => Some((b - a).powi(2) / 12.0),
            Self::StudentT { nu, scale, .. } => (nu > 2.0).then(|| scale * scale * nu / (nu - 2.0)),
            Self::Pareto { shape, scale } => {
                (shape > 2.0).then(|| scale * scale * shape / ((shape - 1.0).powi(2) * (shape - 2.0)))
            }
            Self::LogNormal { mu, sigma } => {
                let s2 = sigma * sigma;
                Some(s2.exp_m1() * (2.0 * mu + s2).exp())
            }
            Self::PointMass { .. } => Some(0.0),
        }
    }

    pub fn std_dev(&self) -> Option<f64> {
        self.variance().map(f64::sqrt)
    }

    /// Absolute central moment `E|X - μ|^k` for real `k > 0`; `None` when
    /// it is infinite.
    pub fn central_moment(&self, k: f64) -> Result<Option<f64>> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::invalid(format!("moment order must be positive, got {k}")));
        }
        let Some(mu) = self.mean() else {
            return Ok(None);
        };
        Ok(match *self {
            Self::Gaussian { sigma, .. } => {
                // σ^k 2^(k/2) Γ((k+1)/2) / √π
                Some((k * sigma.ln() + 0.5 * k * 2f64.ln() + ln_gamma(0.5 * (k + 1.0)) - 0.5 * PI.ln()).exp())
            }
            Self::Uniform { a, b } => Some((0.5 * (b - a)).powf(k) / (k + 1.0)),
            Self::StudentT { nu, scale, .. } => (k < nu).then(|| {
                (k * scale.ln() + 0.5 * k * nu.ln() + ln_gamma(0.5 * (k + 1.0)) + ln_gamma(0.5 * (nu - k))
                    - 0.5 * PI.ln()
                    - ln_gamma(0.5 * nu))
                    .exp()
            }),
            Self::Pareto { shape, .. } if k >= shape => None,
            Self::Pareto { .. } | Self::LogNormal { .. } => {
                let f = |x: f64| (x - mu).abs().powf(k) * self.pdf(x).unwrap_or(0.0);
                Some(integrate(f, self.support_min(), mu, ABS_TOL)? + integrate(f, mu, f64::INFINITY, ABS_TOL)?)
            }
            Self::PointMass { .. } => Some(0.0),
        })
    }

    pub fn iqr(&self) -> f64 {
        // quantiles at 1/4 and 3/4 are finite for every family
        self.quantile(0.75).unwrap_or(f64::NAN) - self.quantile(0.25).unwrap_or(f64::NAN)
    }

    /// Width of the narrowest interval carrying mass `level`.
    ///
    /// Golden-section search over the left quantile offset `q`, plus both
    /// ends of `[0, 1 - level]`. Exact for the unimodal families here.
    pub fn phi(&self, level: f64) -> Result<f64> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::invalid(format!("phi level must be in (0, 1), got {level}")));
        }
        let width = |q: f64| -> f64 {
            let lo = self.quantile(q).unwrap_or(f64::NAN);
            let hi = self.quantile((q + level).min(1.0)).unwrap_or(f64::NAN);
            let w = hi - lo;
            if w.is_nan() {
                f64::INFINITY
            } else {
                w
            }
        };
        let (mut a, mut b) = (0.0, 1.0 - level);
        let r = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - r * (b - a);
        let mut d = a + r * (b - a);
        let (mut fc, mut fd) = (width(c), width(d));
        for _ in 0..200 {
            if b - a <= 1e-15 {
                break;
            }
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = width(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = width(d);
            }
        }
        let best = [width(0.0), width(1.0 - level), fc, fd, width(0.5 * (a + b))]
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        Ok(best.max(0.0))
    }

    /// Smallest average density over the four `kappa`-wide intervals on
    /// either side of each quartile.
    pub fn theta(&self, kappa: f64) -> Result<f64> {
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::invalid(format!("kappa must be positive, got {kappa}")));
        }
        let mut best = f64::INFINITY;
        for q in [self.quantile(0.25)?, self.quantile(0.75)?] {
            // mass just left of q, computed from the side with less cancellation
            let left = self.cdf(q) - self.cdf(q - kappa);
            let right = self.cdf(q + kappa) - self.cdf(q);
            best = best.min(left).min(right);
        }
        Ok(best.max(0.0) / kappa)
    }

    /// `(E[(X-x)·1(X < x)], E[(X-x)·1(X > x)])` at `x = μ - ξ` and
    /// `x = μ + ξ` respectively.
    pub fn tail_expectation(&self, xi: f64) -> Result<(f64, f64)> {
        if !(xi >= 0.0 && xi.is_finite()) {
            return Err(Error::invalid(format!("xi must be finite and nonnegative, got {xi}")));
        }
        let mu = self
            .mean()
            .ok_or_else(|| Error::Unsupported(format!("{self} has no finite mean")))?;
        let (lo, hi) = (mu - xi, mu + xi);
        if let Self::PointMass { c } = *self {
            return Ok(((c - lo).min(0.0), (c - hi).max(0.0)));
        }
        // E[(X-a)1(X<a)] = -∫_{-∞}^a F, E[(X-a)1(X>a)] = ∫_a^∞ (1-F)
        let below = if lo <= self.support_min() {
            0.0
        } else {
            -integrate(|t| self.cdf(t), self.support_min(), lo, ABS_TOL)?
        };
        let above = if hi >= self.support_max() {
            0.0
        } else {
            integrate(|t| self.sf(t), hi, self.support_max(), ABS_TOL)?
        };
        Ok((below, above))
    }
}

/// A requested point and its value; `value` is `None` when infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluated {
    pub at: f64,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailPair {
    pub xi: f64,
    pub below: f64,
    pub above: f64,
}

/// Which quantities [`population_params`] should compute beyond the
/// always-present mean, variance and IQR.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PopulationRequest {
    pub moments: Vec<f64>,
    pub phi_levels: Vec<f64>,
    pub theta_kappas: Vec<f64>,
    pub tail_xis: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationParams {
    pub spec: DistributionSpec,
    pub mean: Option<f64>,
    pub variance: Option<f64>,
    pub iqr: f64,
    pub central_moments: Vec<Evaluated>,
    pub phi: Vec<Evaluated>,
    pub theta: Vec<Evaluated>,
    /// Empty when the mean is infinite.
    pub tail_expectations: Vec<TailPair>,
}

pub fn population_params(spec: &DistributionSpec, request: &PopulationRequest) -> Result<PopulationParams> {
    let central_moments = request
        .moments
        .iter()
        .map(|&k| Ok(Evaluated { at: k, value: spec.central_moment(k)? }))
        .collect::<Result<_>>()?;
    let phi = request
        .phi_levels
        .iter()
        .map(|&l| Ok(Evaluated { at: l, value: Some(spec.phi(l)?) }))
        .collect::<Result<_>>()?;
    let theta = request
        .theta_kappas
        .iter()
        .map(|&k| Ok(Evaluated { at: k, value: Some(spec.theta(k)?) }))
        .collect::<Result<_>>()?;
    let tail_expectations = if spec.mean().is_some() {
        request
            .tail_xis
            .iter()
            .map(|&xi| {
                let (below, above) = spec.tail_expectation(xi)?;
                Ok(TailPair { xi, below, above })
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(PopulationParams {
        spec: *spec,
        mean: spec.mean(),
        variance: spec.variance(),
        iqr: spec.iqr(),
        central_moments,
        phi,
        theta,
        tail_expectations,
    })
}
