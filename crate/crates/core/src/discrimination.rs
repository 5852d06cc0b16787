//! The log ratio-of-maximized-likelihoods statistic and the selection rule.
//!
//! `T = ℓ_LD(λ̂) − ℓ_XG(θ̂)`; choose Lindley when `T > 0`, xgamma when
//! `T < 0`. `T/n` converges to the asymptotic mean `AM` of the winning
//! family, so it is exposed alongside the raw statistic.

use serde::Serialize;

use crate::distributions::{Family, Sample};
use crate::error::Result;
use crate::estimation::{fit_lindley, fit_xgamma, FitResult};

/// Outcome of the sign rule. `Inconclusive` covers the measure-zero tie
/// `T = 0`, which the rule's strict inequalities do not assign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    Lindley,
    Xgamma,
    Inconclusive,
}

impl Selection {
    pub fn matches(&self, family: Family) -> bool {
        matches!(
            (self, family),
            (Selection::Lindley, Family::Lindley) | (Selection::Xgamma, Family::Xgamma)
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiscriminationResult {
    /// Log ratio of maximized likelihoods.
    pub t: f64,
    /// `T/n`, the per-observation statistic.
    pub t_normalized: f64,
    pub lindley_fit: FitResult,
    pub xgamma_fit: FitResult,
    pub selected: Selection,
}

/// Fits both families and applies the sign rule.
pub fn discriminate(sample: &Sample) -> Result<DiscriminationResult> {
    let lindley_fit = fit_lindley(sample)?;
    let xgamma_fit = fit_xgamma(sample)?;
    let t = lindley_fit.log_likelihood - xgamma_fit.log_likelihood;
    let selected = if t > 0.0 {
        Selection::Lindley
    } else if t < 0.0 {
        Selection::Xgamma
    } else {
        Selection::Inconclusive
    };
    Ok(DiscriminationResult {
        t,
        t_normalized: t / sample.n() as f64,
        lindley_fit,
        xgamma_fit,
        selected,
    })
}

/// The algebraically expanded form of `T`,
/// `n[2 ln(λ̂/θ̂) + ln((1+θ̂)/(1+λ̂)) + (θ̂−λ̂)x̄] + Σ ln(1+xᵢ) − Σ ln(1+θ̂xᵢ²/2)`,
/// kept as an independent route for consistency checks against the direct
/// difference of maximized log-likelihoods.
pub fn expanded_log_rml(sample: &Sample, lambda_hat: f64, theta_hat: f64) -> f64 {
    let n = sample.n() as f64;
    let head = 2.0 * (lambda_hat / theta_hat).ln()
        + ((1.0 + theta_hat) / (1.0 + lambda_hat)).ln()
        + (theta_hat - lambda_hat) * sample.mean();
    let mut tail = 0.0;
    for &x in sample.values() {
        tail += x.ln_1p() - (0.5 * theta_hat * x * x).ln_1p();
    }
    n * head + tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::Model;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn t_is_difference_of_log_likelihoods() {
        let s = Model::lindley(0.8).unwrap().sample(100, 4).unwrap();
        let r = discriminate(&s).unwrap();
        assert_eq!(
            r.t,
            r.lindley_fit.log_likelihood - r.xgamma_fit.log_likelihood
        );
        assert_eq!(r.t_normalized, r.t / 100.0);
        match r.selected {
            Selection::Lindley => assert!(r.t > 0.0),
            Selection::Xgamma => assert!(r.t < 0.0),
            Selection::Inconclusive => assert_eq!(r.t, 0.0),
        }
    }

    #[test]
    fn expanded_form_agrees_with_direct_difference() {
        let mut rng = StdRng::seed_from_u64(2024);
        for trial in 0..1000 {
            let truth = if trial % 2 == 0 {
                Model::lindley(rng.random_range(0.2..2.0)).unwrap()
            } else {
                Model::xgamma(rng.random_range(0.2..2.5)).unwrap()
            };
            let n = rng.random_range(5..120);
            let s = truth.sample_with(n, &mut rng).unwrap();
            let r = discriminate(&s).unwrap();
            let expanded =
                expanded_log_rml(&s, r.lindley_fit.model.param(), r.xgamma_fit.model.param());
            let tol = 1e-8 * r.t.abs().max(1e-6);
            assert!(
                (r.t - expanded).abs() <= tol,
                "trial {trial}: direct {} vs expanded {expanded}",
                r.t
            );
        }
    }

    #[test]
    fn t_invariant_under_permutation() {
        let s = Model::xgamma(1.3).unwrap().sample(60, 9).unwrap();
        let t0 = discriminate(&s).unwrap().t;
        let mut values = s.values().to_vec();
        values.reverse();
        let t1 = discriminate(&Sample::new(values).unwrap()).unwrap().t;
        assert!((t0 - t1).abs() < 1e-9);
    }

    #[test]
    fn lindley_truth_selects_lindley_more_often_than_not() {
        let truth = Model::lindley(1.0).unwrap();
        let mut wins = 0;
        let reps = 200;
        for r in 0..reps {
            let s = truth.sample(400, 1000 + r).unwrap();
            if discriminate(&s).unwrap().selected == Selection::Lindley {
                wins += 1;
            }
        }
        assert!(wins * 2 > reps, "only {wins}/{reps} correct");
    }
}
