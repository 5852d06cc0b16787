//! Monte Carlo estimation of the probability of correct selection.
//!
//! Replication `r` draws its sample from a ChaCha stream keyed by
//! `(seed, r)` alone, so the tally is independent of execution order and of
//! how many threads participate. The parallel engine (rayon, behind the
//! `parallel` feature, on by default) and the sequential one therefore
//! produce identical estimates.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotics::asymptotic_summary;
use crate::discrimination::discriminate;
use crate::distributions::Model;
use crate::error::{Error, Result};
use crate::numerics::QuadratureSpec;

/// Fraction of replications allowed to fail fitting before the whole run
/// is considered broken.
const MAX_FAILURE_RATE: f64 = 0.001;

/// Which replication engine this build dispatches to.
pub fn engine() -> &'static str {
    if cfg!(feature = "parallel") {
        "parallel"
    } else {
        "sequential"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PcsEstimate {
    pub truth: Model,
    pub n: usize,
    pub reps: u64,
    pub seed: u64,
    /// Fraction of replications in which the sign rule picked the truth.
    pub pcs_mc: f64,
    /// Binomial standard error `√(p(1−p)/reps)`.
    pub std_error: f64,
    /// The normal-approximation PCS at the same `n`, for side-by-side
    /// comparison.
    pub pcs_asymptotic: f64,
    /// Replications whose xgamma fit did not converge (counted as
    /// incorrect selections).
    pub failures: u64,
}

#[derive(Clone, Copy)]
enum Outcome {
    Correct,
    Incorrect,
    Failed,
}

fn replicate(truth: &Model, n: usize, seed: u64, rep: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    let sample = match truth.sample_with(n, &mut rng) {
        Ok(s) => s,
        Err(_) => return Outcome::Failed,
    };
    match discriminate(&sample) {
        Ok(r) if r.selected.matches(truth.family()) => Outcome::Correct,
        Ok(_) => Outcome::Incorrect,
        Err(_) => Outcome::Failed,
    }
}

fn tally(
    truth: &Model,
    n: usize,
    reps: u64,
    seed: u64,
    correct: u64,
    failures: u64,
    spec: &QuadratureSpec,
) -> Result<PcsEstimate> {
    if failures as f64 > MAX_FAILURE_RATE * reps as f64 {
        return Err(Error::TooManyFitFailures { failures, reps });
    }
    let pcs_mc = correct as f64 / reps as f64;
    let std_error = (pcs_mc * (1.0 - pcs_mc) / reps as f64).sqrt();
    let pcs_asymptotic = asymptotic_summary(truth, spec)?.pcs(n as u64);
    Ok(PcsEstimate {
        truth: *truth,
        n,
        reps,
        seed,
        pcs_mc,
        std_error,
        pcs_asymptotic,
        failures,
    })
}

fn validate(n: usize, reps: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "simulation needs n >= 2, got {n}"
        )));
    }
    if reps < 1 {
        return Err(Error::InvalidArgument("reps must be >= 1".into()));
    }
    Ok(())
}

/// Single-threaded engine; always available and bit-identical to the
/// parallel one.
pub fn simulate_pcs_sequential(
    truth: &Model,
    n: usize,
    reps: u64,
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<PcsEstimate> {
    validate(n, reps)?;
    let (mut correct, mut failures) = (0u64, 0u64);
    for rep in 0..reps {
        match replicate(truth, n, seed, rep) {
            Outcome::Correct => correct += 1,
            Outcome::Incorrect => {}
            Outcome::Failed => failures += 1,
        }
    }
    tally(truth, n, reps, seed, correct, failures, spec)
}

/// Monte Carlo PCS at `(truth, n)` over `reps` replications.
#[cfg(feature = "parallel")]
pub fn simulate_pcs(
    truth: &Model,
    n: usize,
    reps: u64,
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<PcsEstimate> {
    validate(n, reps)?;
    let (correct, failures) = (0..reps)
        .into_par_iter()
        .map(|rep| match replicate(truth, n, seed, rep) {
            Outcome::Correct => (1u64, 0u64),
            Outcome::Incorrect => (0, 0),
            Outcome::Failed => (0, 1),
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    tally(truth, n, reps, seed, correct, failures, spec)
}

/// Monte Carlo PCS at `(truth, n)` over `reps` replications.
#[cfg(not(feature = "parallel"))]
pub fn simulate_pcs(
    truth: &Model,
    n: usize,
    reps: u64,
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<PcsEstimate> {
    simulate_pcs_sequential(truth, n, reps, seed, spec)
}

/// One estimate per `(truth, n)` cell, rows in the order given.
///
/// The asymptotic summary is computed once per truth; replications within a
/// cell run on the parallel engine.
pub fn pcs_table(
    truths: &[Model],
    ns: &[usize],
    reps: u64,
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<Vec<PcsEstimate>> {
    if truths.is_empty() || ns.is_empty() {
        return Err(Error::InvalidArgument(
            "truth and sample-size lists must be nonempty".into(),
        ));
    }
    let mut out = Vec::with_capacity(truths.len() * ns.len());
    for truth in truths {
        let summary = asymptotic_summary(truth, spec)?;
        for &n in ns {
            let mut cell = simulate_pcs(truth, n, reps, seed, spec)
                .map_err(|e| Error::InvalidArgument(format!("cell ({truth}, n={n}): {e}")))?;
            cell.pcs_asymptotic = summary.pcs(n as u64);
            out.push(cell);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn single_replication_is_zero_or_one() {
        let truth = Model::lindley(1.0).unwrap();
        let e = simulate_pcs(&truth, 20, 1, 3, &spec()).unwrap();
        assert!(e.pcs_mc == 0.0 || e.pcs_mc == 1.0);
        assert_eq!(e.reps, 1);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        let truth = Model::lindley(1.0).unwrap();
        assert!(simulate_pcs(&truth, 1, 10, 3, &spec()).is_err());
        assert!(simulate_pcs(&truth, 20, 0, 3, &spec()).is_err());
    }

    #[test]
    fn parallel_and_sequential_agree_exactly() {
        let truth = Model::xgamma(1.26).unwrap();
        let q = spec();
        let a = simulate_pcs(&truth, 25, 400, 77, &q).unwrap();
        let b = simulate_pcs_sequential(&truth, 25, 400, 77, &q).unwrap();
        assert_eq!(a.pcs_mc, b.pcs_mc);
        assert_eq!(a.failures, b.failures);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let truth = Model::lindley(0.78).unwrap();
        let q = spec();
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| simulate_pcs(&truth, 30, 500, 11, &q).unwrap().pcs_mc)
        };
        let single = run(1);
        let four = run(4);
        assert_eq!(single, four);
    }

    #[test]
    fn estimate_tracks_asymptotic_value_at_moderate_n() {
        // The normal approximation is adequate from n = 100 on, including
        // at the edges of the parameter range.
        for (truth, seed) in [
            (Model::lindley(0.45).unwrap(), 5u64),
            (Model::xgamma(2.05).unwrap(), 6),
        ] {
            let e = simulate_pcs(&truth, 100, 4000, seed, &spec()).unwrap();
            assert!(
                (e.pcs_mc - e.pcs_asymptotic).abs() <= 3.0 * e.std_error + 0.01,
                "{truth}: mc {} vs asymptotic {} (se {})",
                e.pcs_mc,
                e.pcs_asymptotic,
                e.std_error
            );
            assert!(e.failures == 0, "{} failures", e.failures);
        }
    }

    #[test]
    fn pcs_increases_with_n_on_paired_seeds() {
        let truth = Model::xgamma(0.85).unwrap();
        let q = spec();
        let small = simulate_pcs(&truth, 20, 3000, 9, &q).unwrap();
        let large = simulate_pcs(&truth, 200, 3000, 9, &q).unwrap();
        assert!(
            large.pcs_mc > small.pcs_mc,
            "{} at n=200 vs {} at n=20",
            large.pcs_mc,
            small.pcs_mc
        );
    }

    #[test]
    fn table_layout_and_consistency_with_single_cell() {
        let truths = [Model::lindley(0.78).unwrap(), Model::xgamma(1.26).unwrap()];
        let ns = [20, 40];
        let q = spec();
        let table = pcs_table(&truths, &ns, 200, 13, &q).unwrap();
        assert_eq!(table.len(), 4);
        assert_eq!(table[0].truth, truths[0]);
        assert_eq!(table[0].n, 20);
        assert_eq!(table[3].truth, truths[1]);
        assert_eq!(table[3].n, 40);

        let single = simulate_pcs(&truths[0], 20, 200, 13, &q).unwrap();
        assert_eq!(table[0].pcs_mc, single.pcs_mc);
        assert!(pcs_table(&[], &ns, 10, 1, &q).is_err());
    }
}
