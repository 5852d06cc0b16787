//! Decide whether a sample of positive reals is better described by a
//! Lindley or an xgamma distribution.
//!
//! The decision statistic is the log ratio of maximized likelihoods
//! `T = ℓ_LD(λ̂) − ℓ_XG(θ̂)`: choose Lindley when `T > 0`, xgamma when
//! `T < 0`. Around that rule the crate provides
//!
//! - [`distributions`]: densities, CDFs, moments and exact mixture sampling
//!   for both families;
//! - [`estimation`]: maximum-likelihood fits (closed form for Lindley, a
//!   bracketed score root for xgamma);
//! - [`discrimination`]: the statistic and the selection rule;
//! - [`asymptotics`]: pseudo-true parameters, the limiting mean/variance of
//!   `T/n`, and the normal-approximation probability of correct selection;
//! - [`sample_size`]: K–S distance between the families and minimum sample
//!   sizes for a protection level and closeness tolerance;
//! - [`montecarlo`]: seeded, reproducible PCS simulation (parallel via
//!   rayon unless the `parallel` feature is disabled);
//! - [`gof`]: one-sample K–S and binned chi-square tests;
//! - [`numerics`]: the half-line quadrature, root finding and special
//!   functions behind the statistical layers.

pub mod asymptotics;
pub mod discrimination;
pub mod distributions;
mod error;
pub mod estimation;
pub mod gof;
pub mod montecarlo;
pub mod numerics;
pub mod sample_size;

pub use asymptotics::{
    asymptotic_summary, pcs_asymptotic, pseudo_true_lambda, pseudo_true_theta, AsymptoticSummary,
};
pub use discrimination::{discriminate, DiscriminationResult, Selection};
pub use distributions::{Family, Model, Sample};
pub use error::{Error, Result};
pub use estimation::{fit_lindley, fit_xgamma, log_likelihood, FitResult};
pub use gof::{chi_square_test, ks_test, GofReport};
pub use montecarlo::{pcs_table, simulate_pcs, simulate_pcs_sequential, PcsEstimate};
pub use numerics::QuadratureSpec;
pub use sample_size::{ks_distance, min_n, plan_min_sample_size, SampleSizePlan};
