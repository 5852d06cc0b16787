//! Pseudo-true parameters and the asymptotic distribution of the statistic
//! under each candidate truth.
//!
//! When the data come from one family, the MLE of the *other* family
//! converges to the pseudo-true parameter — the member of the wrong family
//! closest in Kullback–Leibler sense. `T/n` then converges to
//! `AM = E[ln f_true − ln f_other(·; pseudo-true)]` and `Var(T)/n` to
//! `AV = Var[d(X)]` of the per-observation log-density difference, giving a
//! normal approximation for the probability of correct selection.

use serde::Serialize;

use crate::distributions::{Family, Model};
use crate::error::Result;
use crate::numerics::{expand_bracket, expect, find_root, std_normal_cdf, QuadratureSpec};

const SCORE_TOL: f64 = 1e-9;

/// Asymptotic description of `T` under a fixed true model.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticSummary {
    pub truth: Model,
    /// θ̃ when the truth is Lindley, λ̃ when the truth is xgamma.
    pub pseudo_true_param: f64,
    /// Per-observation limit of `E(T)/n`; positive under Lindley truth,
    /// negative under xgamma truth.
    pub am: f64,
    /// Per-observation limit of `Var(T)/n`.
    pub av: f64,
}

impl AsymptoticSummary {
    /// Normal-approximation probability of correct selection at sample size
    /// `n`: `Φ(√n·|AM|/√AV)` for the sign that makes the selection correct.
    pub fn pcs(&self, n: u64) -> f64 {
        let root_n = (n as f64).sqrt();
        std_normal_cdf(root_n * self.am.abs() / self.av.sqrt())
    }
}

/// The xgamma parameter closest (KL) to `Lindley(λ)`.
///
/// Maximizes `g(θ) = 2lnθ − ln(1+θ) + E_LD[ln(1+θX²/2)] − θ(2+λ)/(λ(1+λ))`
/// by solving `g'(θ) = 2/θ − 1/(1+θ) + E_LD[(X²/2)/(1+θX²/2)] − mean = 0`.
pub fn pseudo_true_theta(lambda: f64, spec: &QuadratureSpec) -> Result<f64> {
    let truth = Model::lindley(lambda)?;
    let mean = truth.mean();
    let mut score_err = None;
    let mut score = |theta: f64| -> f64 {
        match expect(&truth, |x| 0.5 * x * x / (1.0 + 0.5 * theta * x * x), spec) {
            Ok(e) => 2.0 / theta - 1.0 / (1.0 + theta) + e - mean,
            Err(err) => {
                score_err = Some(err);
                f64::NAN
            }
        }
    };
    // θ̃ tracks roughly 1.2λ over the useful range.
    let lo = (lambda / 4.0).max(1e-6);
    let hi = 8.0 * lambda + 2.0;
    let bracket = expand_bracket(&mut score, lo, hi, 20)?;
    let theta = find_root(&mut score, bracket, SCORE_TOL)?;
    if let Some(err) = score_err {
        return Err(err);
    }
    Ok(theta)
}

/// The Lindley parameter closest (KL) to `Xgamma(θ)`: with
/// `c = (3+θ)/(θ(1+θ))` the score reduces to `cλ² + (c−1)λ − 2 = 0`, whose
/// positive root is returned in closed form.
pub fn pseudo_true_lambda(theta: f64) -> Result<f64> {
    let c = Model::xgamma(theta)?.mean();
    Ok((-(c - 1.0) + ((c - 1.0).powi(2) + 8.0 * c).sqrt()) / (2.0 * c))
}

/// Per-observation log-density difference `d(x) = ln f_LD − ln f_XG` minus
/// its constant term, which variance does not see.
fn fluctuation(lambda: f64, theta: f64, x: f64) -> f64 {
    (theta - lambda) * x + x.ln_1p() - (0.5 * theta * x * x).ln_1p()
}

/// AM and AV under the given truth, by quadrature against the exact
/// densities.
pub fn asymptotic_summary(truth: &Model, spec: &QuadratureSpec) -> Result<AsymptoticSummary> {
    let (lambda, theta, pseudo_true_param) = match truth.family() {
        Family::Lindley => {
            let tt = pseudo_true_theta(truth.param(), spec)?;
            (truth.param(), tt, tt)
        }
        Family::Xgamma => {
            let lt = pseudo_true_lambda(truth.param())?;
            (lt, truth.param(), lt)
        }
    };
    let mean = truth.mean();

    let e_log1p = expect(truth, |x| x.ln_1p(), spec)?;
    let e_logshape = expect(truth, |x| (0.5 * theta * x * x).ln_1p(), spec)?;
    let am = 2.0 * (lambda / theta).ln()
        + ((1.0 + theta) / (1.0 + lambda)).ln()
        + (theta - lambda) * mean
        + e_log1p
        - e_logshape;

    let m1 = expect(truth, |x| fluctuation(lambda, theta, x), spec)?;
    let m2 = expect(truth, |x| fluctuation(lambda, theta, x).powi(2), spec)?;
    let av = m2 - m1 * m1;

    Ok(AsymptoticSummary {
        truth: *truth,
        pseudo_true_param,
        am,
        av,
    })
}

/// Convenience wrapper: `asymptotic_summary(truth).pcs(n)`.
pub fn pcs_asymptotic(truth: &Model, n: u64, spec: &QuadratureSpec) -> Result<f64> {
    Ok(asymptotic_summary(truth, spec)?.pcs(n))
}

/// AV via the variance-of-a-sum expansion,
/// `a²Var(X) + Var(U) + Var(V) + 2a[Cov(X,U) − Cov(X,V)] − 2Cov(U,V)`
/// with `a = θ−λ`, `U = ln(1+X)`, `V = ln(1+θX²/2)`. Retained purely as an
/// independent route to cross-check the direct `E[d²] − E[d]²` computation.
pub fn av_expansion(truth: &Model, spec: &QuadratureSpec) -> Result<f64> {
    let (lambda, theta) = match truth.family() {
        Family::Lindley => (truth.param(), pseudo_true_theta(truth.param(), spec)?),
        Family::Xgamma => (pseudo_true_lambda(truth.param())?, truth.param()),
    };
    let a = theta - lambda;
    let u = |x: f64| x.ln_1p();
    let v = |x: f64| (0.5 * theta * x * x).ln_1p();

    let (mean, var_x) = truth.moments();
    let e_u = expect(truth, u, spec)?;
    let e_v = expect(truth, v, spec)?;
    let var_u = expect(truth, |x| u(x) * u(x), spec)? - e_u * e_u;
    let var_v = expect(truth, |x| v(x) * v(x), spec)? - e_v * e_v;
    let cov_xu = expect(truth, |x| x * u(x), spec)? - mean * e_u;
    let cov_xv = expect(truth, |x| x * v(x), spec)? - mean * e_v;
    let cov_uv = expect(truth, |x| u(x) * v(x), spec)? - e_u * e_v;

    Ok(a * a * var_x + var_u + var_v + 2.0 * a * (cov_xu - cov_xv) - 2.0 * cov_uv)
}
