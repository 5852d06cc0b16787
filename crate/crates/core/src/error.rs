//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Distribution parameter must be a finite positive real.
    #[error("invalid distribution parameter {0}: must be finite and > 0")]
    InvalidParameter(f64),

    /// Argument outside the domain of the function being evaluated.
    #[error("{what} = {value} is outside the valid domain")]
    Domain { what: &'static str, value: f64 },

    /// A sample must contain at least one observation.
    #[error("sample is empty")]
    EmptySample,

    /// Samples live on the positive half-line.
    #[error("observation {index} is {value}: all observations must be finite and > 0")]
    NonPositiveObservation { index: usize, value: f64 },

    /// Root bracketing failed: no sign change on the interval.
    #[error("no sign change on bracket [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    /// Adaptive quadrature hit its depth limit before meeting the tolerance.
    /// Carries the best estimate together with a bound on its error.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound}")]
    QuadratureNonConvergence { estimate: f64, error_bound: f64 },

    /// A histogram bin with zero expected mass under the fitted model.
    #[error("bin {bin} has zero expected count; merge it with a neighbour")]
    ZeroExpectedCount { bin: usize },

    /// Too many per-replication fit failures in a simulation run.
    #[error("{failures} of {reps} replications failed to fit (limit is 0.1%)")]
    TooManyFitFailures { failures: u64, reps: u64 },

    /// Generic argument error with context.
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
