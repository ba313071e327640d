use std::fmt;
use std::str::FromStr;

use rand_distr::Distribution;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Continuous, ContinuousCDF, LogNormal, Normal, Pareto, StudentsT};

use crate::error::{Error, Result};
use crate::primitives::dataset::RealDataset;
use crate::primitives::noise::NoiseSource;

/// A test distribution. Text form is `family:key=value,...`, for example
/// `gaussian:mu=0,sigma=1` or `student_t:nu=3,loc=0,scale=1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum DistributionSpec {
    Gaussian { mu: f64, sigma: f64 },
    Uniform { a: f64, b: f64 },
    StudentT { nu: f64, loc: f64, scale: f64 },
    Pareto { shape: f64, scale: f64 },
    LogNormal { mu: f64, sigma: f64 },
    PointMass { c: f64 },
}

pub(crate) enum Cdf {
    Normal(Normal),
    T(StudentsT),
    Pareto(Pareto),
    LogNormal(LogNormal),
    Uniform { a: f64, b: f64 },
    Point(f64),
}

impl DistributionSpec {
    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        Self::Gaussian { mu, sigma }.validated()
    }

    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        Self::Uniform { a, b }.validated()
    }

    pub fn student_t(nu: f64, loc: f64, scale: f64) -> Result<Self> {
        Self::StudentT { nu, loc, scale }.validated()
    }

    pub fn pareto(shape: f64, scale: f64) -> Result<Self> {
        Self::Pareto { shape, scale }.validated()
    }

    pub fn lognormal(mu: f64, sigma: f64) -> Result<Self> {
        Self::LogNormal { mu, sigma }.validated()
    }

    pub fn point_mass(c: f64) -> Result<Self> {
        Self::PointMass { c }.validated()
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::Uniform { .. } => "uniform",
            Self::StudentT { .. } => "student_t",
            Self::Pareto { .. } => "pareto",
            Self::LogNormal { .. } => "lognormal",
            Self::PointMass { .. } => "point_mass",
        }
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Self::Gaussian { mu, sigma } => vec![("mu", mu), ("sigma", sigma)],
            Self::Uniform { a, b } => vec![("a", a), ("b", b)],
            Self::StudentT { nu, loc, scale } => vec![("nu", nu), ("loc", loc), ("scale", scale)],
            Self::Pareto { shape, scale } => vec![("shape", shape), ("scale", scale)],
            Self::LogNormal { mu, sigma } => vec![("mu", mu), ("sigma", sigma)],
            Self::PointMass { c } => vec![("c", c)],
        }
    }

    pub fn validated(self) -> Result<Self> {
        if self.params().iter().any(|(_, v)| !v.is_finite()) {
            return Err(Error::invalid(format!("{self}: parameters must be finite")));
        }
        let ok = match self {
            Self::Gaussian { sigma, .. } | Self::LogNormal { sigma, .. } => sigma > 0.0,
            Self::Uniform { a, b } => b > a,
            Self::StudentT { nu, scale, .. } => nu > 0.0 && scale > 0.0,
            Self::Pareto { shape, scale } => shape > 0.0 && scale > 0.0,
            Self::PointMass { .. } => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::invalid(format!("{self}: scale and shape parameters must be positive")))
        }
    }

    pub(crate) fn cdf_impl(&self) -> Cdf {
        // parameters are validated on construction, so these cannot fail
        match *self {
            Self::Gaussian { mu, sigma } => Cdf::Normal(Normal::new(mu, sigma).expect("valid normal")),
            Self::StudentT { nu, loc, scale } => Cdf::T(StudentsT::new(loc, scale, nu).expect("valid t")),
            Self::Pareto { shape, scale } => Cdf::Pareto(Pareto::new(scale, shape).expect("valid pareto")),
            Self::LogNormal { mu, sigma } => Cdf::LogNormal(LogNormal::new(mu, sigma).expect("valid lognormal")),
            Self::Uniform { a, b } => Cdf::Uniform { a, b },
            Self::PointMass { c } => Cdf::Point(c),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match self.cdf_impl() {
            Cdf::Normal(d) => d.cdf(x),
            Cdf::T(d) => d.cdf(x),
            Cdf::Pareto(d) => d.cdf(x),
            Cdf::LogNormal(d) => d.cdf(x),
            Cdf::Uniform { a, b } => ((x - a) / (b - a)).clamp(0.0, 1.0),
            Cdf::Point(c) => f64::from(x >= c),
        }
    }

    /// `1 - F(x)` without cancellation in the upper tail.
    pub fn sf(&self, x: f64) -> f64 {
        match self.cdf_impl() {
            Cdf::Normal(d) => d.sf(x),
            Cdf::T(d) => d.sf(x),
            Cdf::Pareto(d) => d.sf(x),
            Cdf::LogNormal(d) => d.sf(x),
            Cdf::Uniform { a, b } => ((b - x) / (b - a)).clamp(0.0, 1.0),
            Cdf::Point(c) => f64::from(x < c),
        }
    }

    /// Density; `None` for the point mass.
    pub fn pdf(&self, x: f64) -> Option<f64> {
        Some(match self.cdf_impl() {
            Cdf::Normal(d) => d.pdf(x),
            Cdf::T(d) => d.pdf(x),
            Cdf::Pareto(d) => d.pdf(x),
            Cdf::LogNormal(d) => d.pdf(x),
            Cdf::Uniform { a, b } => {
                if (a..=b).contains(&x) {
                    1.0 / (b - a)
                } else {
                    0.0
                }
            }
            Cdf::Point(_) => return None,
        })
    }

    /// `F^-1(p)` for `p` in `[0, 1]`; infinite at the ends of unbounded
    /// supports.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::invalid(format!("quantile level {p} outside [0, 1]")));
        }
        Ok(match *self {
            Self::Gaussian { mu, sigma } => mu + sigma * std_normal_quantile(p),
            Self::LogNormal { mu, sigma } => (mu + sigma * std_normal_quantile(p)).exp(),
            Self::Uniform { a, b } => a + p * (b - a),
            Self::Pareto { shape, scale } => scale * (1.0 - p).powf(-1.0 / shape),
            Self::PointMass { c } => c,
            Self::StudentT { loc, .. } if p == 0.5 => loc,
            Self::StudentT { .. } if p == 0.0 => f64::NEG_INFINITY,
            Self::StudentT { .. } if p == 1.0 => f64::INFINITY,
            Self::StudentT { .. } => match self.cdf_impl() {
                Cdf::T(d) => d.inverse_cdf(p),
                _ => unreachable!(),
            },
        })
    }

    /// Lower end of the support.
    pub fn support_min(&self) -> f64 {
        match *self {
            Self::Uniform { a, .. } => a,
            Self::Pareto { scale, .. } => scale,
            Self::LogNormal { .. } => 0.0,
            Self::PointMass { c } => c,
            _ => f64::NEG_INFINITY,
        }
    }

    pub fn support_max(&self) -> f64 {
        match *self {
            Self::Uniform { b, .. } => b,
            Self::PointMass { c } => c,
            _ => f64::INFINITY,
        }
    }

    pub fn draw(&self, noise: &mut NoiseSource) -> f64 {
        let rng = noise.rng();
        match *self {
            Self::Gaussian { mu, sigma } => rand_distr::Normal::new(mu, sigma).expect("valid").sample(rng),
            Self::Uniform { a, b } => rand_distr::Uniform::new(a, b).expect("valid").sample(rng),
            Self::StudentT { nu, loc, scale } => loc + scale * rand_distr::StudentT::new(nu).expect("valid").sample(rng),
            Self::Pareto { shape, scale } => rand_distr::Pareto::new(scale, shape).expect("valid").sample(rng),
            Self::LogNormal { mu, sigma } => rand_distr::LogNormal::new(mu, sigma).expect("valid").sample(rng),
            Self::PointMass { c } => c,
        }
    }

    /// `n` i.i.d. draws, sorted.
    pub fn sample(&self, n: usize, noise: &mut NoiseSource) -> Result<RealDataset> {
        if n == 0 {
            return Err(Error::invalid("sample size must be at least 1"));
        }
        let values = (0..n).map(|_| self.draw(noise)).collect();
        RealDataset::new(values)
    }
}

fn std_normal_quantile(p: f64) -> f64 {
    if p == 0.0 {
        f64::NEG_INFINITY
    } else if p == 1.0 {
        f64::INFINITY
    } else {
        Normal::standard().inverse_cdf(p)
    }
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}:{}", self.family(), params.join(","))
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut given: Vec<(String, f64)> = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("expected key=value, got '{part}'")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("'{v}' is not a number")))?;
            given.push((k.trim().to_string(), v));
        }
        let allowed: &[(&str, Option<f64>)] = match family {
            "gaussian" | "lognormal" => &[("mu", Some(0.0)), ("sigma", Some(1.0))],
            "uniform" => &[("a", Some(0.0)), ("b", Some(1.0))],
            "student_t" => &[("nu", None), ("loc", Some(0.0)), ("scale", Some(1.0))],
            "pareto" => &[("shape", None), ("scale", Some(1.0))],
            "point_mass" => &[("c", None)],
            other => return Err(Error::invalid(format!("unknown distribution family '{other}'"))),
        };
        for (k, _) in &given {
            if !allowed.iter().any(|(name, _)| name == k) {
                return Err(Error::invalid(format!("{family} has no parameter '{k}'")));
            }
        }
        let mut values = Vec::with_capacity(allowed.len());
        for (name, default) in allowed {
            let found: Vec<f64> = given.iter().filter(|(k, _)| k == name).map(|(_, v)| *v).collect();
            let v = match (found.as_slice(), default) {
                ([v], _) => *v,
                ([], Some(d)) => *d,
                ([], None) => return Err(Error::invalid(format!("{family} needs parameter '{name}'"))),
                _ => return Err(Error::invalid(format!("parameter '{name}' given twice"))),
            };
            values.push(v);
        }
        let spec = match family {
            "gaussian" => Self::Gaussian { mu: values[0], sigma: values[1] },
            "lognormal" => Self::LogNormal { mu: values[0], sigma: values[1] },
            "uniform" => Self::Uniform { a: values[0], b: values[1] },
            "student_t" => Self::StudentT { nu: values[0], loc: values[1], scale: values[2] },
            "pareto" => Self::Pareto { shape: values[0], scale: values[1] },
            _ => Self::PointMass { c: values[0] },
        };
        spec.validated()
    }
}

impl TryFrom<String> for DistributionSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DistributionSpec> for String {
    fn from(spec: DistributionSpec) -> String {
        spec.to_string()
    }
}
