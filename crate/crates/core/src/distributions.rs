//! The Lindley and xgamma lifetime distributions.
//!
//! Both families have a single positive rate-like parameter and support
//! `x > 0`:
//!
//! ```text
//! Lindley(λ):  f(x) = λ²/(1+λ) · (1+x)       · e^{−λx}
//! xgamma(θ):   f(x) = θ²/(1+θ) · (1+θx²/2)   · e^{−θx}
//! ```
//!
//! Each is a two-component mixture of an exponential and an Erlang law:
//! Lindley mixes Exp(λ) and Gamma(2,λ) with weights λ/(1+λ) and 1/(1+λ);
//! xgamma mixes Exp(θ) and Gamma(3,θ) with weights θ/(1+θ) and 1/(1+θ).
//! Sampling uses that composition directly, so no rejection step is needed.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The two candidate families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lindley,
    Xgamma,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Lindley => write!(f, "lindley"),
            Family::Xgamma => write!(f, "xgamma"),
        }
    }
}

/// A fully specified member of one of the two families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Model {
    family: Family,
    param: f64,
}

impl Model {
    /// Creates a model, rejecting non-finite or non-positive parameters.
    pub fn new(family: Family, param: f64) -> Result<Self> {
        if !param.is_finite() || param <= 0.0 {
            return Err(Error::InvalidParameter(param));
        }
        Ok(Self { family, param })
    }

    pub fn lindley(param: f64) -> Result<Self> {
        Self::new(Family::Lindley, param)
    }

    pub fn xgamma(param: f64) -> Result<Self> {
        Self::new(Family::Xgamma, param)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn param(&self) -> f64 {
        self.param
    }

    /// Natural log of the density at `x > 0`.
    ///
    /// Lindley: `2lnλ − ln(1+λ) + ln(1+x) − λx`;
    /// xgamma: `2lnθ − ln(1+θ) + ln(1+θx²/2) − θx`.
    pub fn log_density(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x <= 0.0 {
            return Err(Error::Domain {
                what: "x",
                value: x,
            });
        }
        let p = self.param;
        let norm = 2.0 * p.ln() - p.ln_1p();
        Ok(match self.family {
            Family::Lindley => norm + x.ln_1p() - p * x,
            Family::Xgamma => {
                // For very large x, θx²/2 overflows f64; expand the log term.
                let shape = if x > 1e8 {
                    (p / 2.0).ln() + 2.0 * x.ln() + (2.0 / (p * x * x)).ln_1p()
                } else {
                    (0.5 * p * x * x).ln_1p()
                };
                norm + shape - p * x
            }
        })
    }

    /// Density at `x`, taking the right-limit at `x = 0` and `0` for `x < 0`.
    pub fn density(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let p = self.param;
        // e^{−px} underflows long before the polynomial factor overflows.
        if p * x > 800.0 {
            return 0.0;
        }
        let norm = p * p / (1.0 + p);
        let shape = match self.family {
            Family::Lindley => 1.0 + x,
            Family::Xgamma => 1.0 + 0.5 * p * x * x,
        };
        norm * shape * (-p * x).exp()
    }

    /// Distribution function at `x ≥ 0`.
    ///
    /// Closed forms obtained by integrating the densities:
    /// Lindley: `F(x) = 1 − (1+λ+λx)/(1+λ)·e^{−λx}`;
    /// xgamma: `F(x) = 1 − (1+θ+θx+θ²x²/2)/(1+θ)·e^{−θx}`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x < 0.0 {
            return Err(Error::Domain {
                what: "x",
                value: x,
            });
        }
        let p = self.param;
        if p * x > 745.0 {
            return Ok(1.0);
        }
        let poly = match self.family {
            Family::Lindley => 1.0 + p + p * x,
            Family::Xgamma => 1.0 + p + p * x + 0.5 * p * p * x * x,
        };
        Ok(1.0 - poly / (1.0 + p) * (-p * x).exp())
    }

    /// Closed-form `(mean, variance)`.
    ///
    /// Lindley: mean `(2+λ)/(λ(1+λ))`, variance `(λ²+4λ+2)/(λ²(1+λ)²)`;
    /// xgamma: mean `(3+θ)/(θ(1+θ))`, variance `(θ²+8θ+3)/(θ²(1+θ)²)`.
    pub fn moments(&self) -> (f64, f64) {
        let p = self.param;
        let d = p * (1.0 + p);
        match self.family {
            Family::Lindley => ((2.0 + p) / d, (p * p + 4.0 * p + 2.0) / (d * d)),
            Family::Xgamma => ((3.0 + p) / d, (p * p + 8.0 * p + 3.0) / (d * d)),
        }
    }

    pub fn mean(&self) -> f64 {
        self.moments().0
    }

    /// One draw by mixture composition: exponential with probability
    /// `p/(1+p)`, otherwise an Erlang of order 2 (Lindley) or 3 (xgamma).
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let p = self.param;
        let exp_weight = p / (1.0 + p);
        let erlang_order = match self.family {
            Family::Lindley => 2,
            Family::Xgamma => 3,
        };
        let k = if rng.random::<f64>() < exp_weight {
            1
        } else {
            erlang_order
        };
        (0..k).map(|_| exponential(rng, p)).sum()
    }

    /// `n` i.i.d. draws; the same `(model, n, seed)` triple reproduces
    /// bit-identical output.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Sample> {
        if n == 0 {
            return Err(Error::InvalidArgument("sample size must be >= 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(n, &mut rng)
    }

    /// `n` i.i.d. draws from a caller-supplied generator.
    pub fn sample_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        if n == 0 {
            return Err(Error::InvalidArgument("sample size must be >= 1".into()));
        }
        Sample::new((0..n).map(|_| self.draw(rng)).collect())
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({})", self.family, self.param)
    }
}

/// Exp(rate) by inversion on the open unit interval, so draws are strictly
/// positive.
fn exponential<R: Rng + ?Sized>(rng: &mut R, rate: f64) -> f64 {
    let u: f64 = rng.sample(Open01);
    -u.ln() / rate
}

/// An observed or simulated sample of positive reals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    values: Vec<f64>,
    mean: f64,
}

impl Sample {
    /// Validates that every value is finite and strictly positive.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPositiveObservation { index, value });
            }
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        Ok(Self { values, mean })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Values in ascending order (the sample itself is kept as given).
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }
}
