//! Goodness of fit of a fitted model against data: one-sample
//! Kolmogorov–Smirnov test and a binned chi-square test.

use serde::Serialize;

use crate::distributions::{Model, Sample};
use crate::error::{Error, Result};
use crate::numerics::{chi_square_sf, kolmogorov_sf};

/// One histogram bin `(lower, upper]` with its observed and expected counts.
#[derive(Debug, Clone, Serialize)]
pub struct Bin {
    pub lower: f64,
    pub upper: f64,
    pub observed: u64,
    pub expected: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GofReport {
    pub ks_statistic: f64,
    pub ks_p_value: f64,
    pub chi_square: f64,
    pub chi_df: u32,
    pub chi_p_value: f64,
    pub bins: Vec<Bin>,
}

/// One-sample K–S test: `D = max_i max(i/n − F(x₍ᵢ₎), F(x₍ᵢ₎) − (i−1)/n)`
/// over the sorted sample, with the p-value from the Kolmogorov
/// distribution (exact in small samples).
pub fn ks_test(sample: &Sample, model: &Model) -> Result<(f64, f64)> {
    let sorted = sample.sorted();
    let n = sorted.len() as f64;
    let mut d = 0.0_f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = model.cdf(x)?;
        let upper = (i + 1) as f64 / n - f;
        let lower = f - i as f64 / n;
        d = d.max(upper).max(lower);
    }
    Ok((d, kolmogorov_sf(sorted.len(), d)))
}

/// Binned chi-square test plus the K–S test, assembled into one report.
///
/// `edges` are the interior bin boundaries; the first bin starts at 0 and
/// the last extends to infinity. Expected counts are `n·(F(b) − F(a))` per
/// bin `(a, b]`, and `df = #bins − 1 − fitted_params`.
pub fn chi_square_test(
    sample: &Sample,
    model: &Model,
    edges: &[f64],
    fitted_params: u32,
) -> Result<GofReport> {
    if edges.is_empty() {
        return Err(Error::InvalidArgument(
            "at least one bin edge is required".into(),
        ));
    }
    for w in edges.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidArgument(format!(
                "bin edges must be strictly increasing: {} >= {}",
                w[0], w[1]
            )));
        }
    }
    if edges[0] <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "bin edges must be positive, got {}",
            edges[0]
        )));
    }
    let n_bins = edges.len() + 1;
    if (n_bins as u32) <= fitted_params + 1 {
        return Err(Error::InvalidArgument(format!(
            "{n_bins} bins leave no degrees of freedom after fitting {fitted_params} parameter(s)"
        )));
    }

    let n = sample.n() as f64;
    let mut bins = Vec::with_capacity(n_bins);
    let mut lower = 0.0;
    let mut f_lower = 0.0;
    for (i, &upper) in edges.iter().enumerate() {
        let f_upper = model.cdf(upper)?;
        let expected = n * (f_upper - f_lower);
        if expected <= 0.0 {
            return Err(Error::ZeroExpectedCount { bin: i });
        }
        bins.push(Bin {
            lower,
            upper,
            observed: 0,
            expected,
        });
        lower = upper;
        f_lower = f_upper;
    }
    let tail_expected = n * (1.0 - f_lower);
    if tail_expected <= 0.0 {
        return Err(Error::ZeroExpectedCount { bin: n_bins - 1 });
    }
    bins.push(Bin {
        lower,
        upper: f64::INFINITY,
        observed: 0,
        expected: tail_expected,
    });

    // Count observations into (a, b] bins.
    for &x in sample.values() {
        let idx = edges.partition_point(|&e| e < x);
        bins[idx].observed += 1;
    }

    let chi_square = bins
        .iter()
        .map(|b| {
            let diff = b.observed as f64 - b.expected;
            diff * diff / b.expected
        })
        .sum::<f64>();
    let chi_df = n_bins as u32 - 1 - fitted_params;
    let chi_p_value = chi_square_sf(chi_df, chi_square)?;
    let (ks_statistic, ks_p_value) = ks_test(sample, model)?;

    Ok(GofReport {
        ks_statistic,
        ks_p_value,
        chi_square,
        chi_df,
        chi_p_value,
        bins,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_statistic_at_exact_quantiles() {
        // Points placed at F⁻¹((i−½)/n) leave gaps of exactly 1/(2n).
        let model = Model::lindley(1.0).unwrap();
        let n = 20;
        let mut values = Vec::new();
        for i in 1..=n {
            let target = (i as f64 - 0.5) / n as f64;
            // invert the CDF by bisection
            let (mut lo, mut hi) = (1e-12, 60.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if model.cdf(mid).unwrap() < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            values.push(0.5 * (lo + hi));
        }
        let s = Sample::new(values).unwrap();
        let (d, _) = ks_test(&s, &model).unwrap();
        assert!((d - 1.0 / (2.0 * n as f64)).abs() < 1e-9, "d = {d}");
    }

    #[test]
    fn ks_statistic_unaffected_by_input_order() {
        let model = Model::xgamma(1.0).unwrap();
        let s = model.sample(40, 6).unwrap();
        let (d0, p0) = ks_test(&s, &model).unwrap();
        let mut rev = s.values().to_vec();
        rev.reverse();
        let (d1, p1) = ks_test(&Sample::new(rev).unwrap(), &model).unwrap();
        assert_eq!(d0, d1);
        assert_eq!(p0, p1);
    }

    #[test]
    fn ks_p_values_roughly_uniform_under_the_null() {
        // p-values of samples drawn from the fitted model itself should be
        // uniform; compare their empirical CDF against the diagonal.
        let model = Model::lindley(0.9).unwrap();
        let runs = 1000;
        let mut pvals = Vec::with_capacity(runs);
        for seed in 0..runs {
            let s = model.sample(30, 40_000 + seed as u64).unwrap();
            let (_, p) = ks_test(&s, &model).unwrap();
            pvals.push(p);
        }
        pvals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut d = 0.0_f64;
        for (i, &p) in pvals.iter().enumerate() {
            d = d
                .max((i + 1) as f64 / runs as f64 - p)
                .max(p - i as f64 / runs as f64);
        }
        let p_uniformity = kolmogorov_sf(runs, d);
        assert!(p_uniformity > 0.01, "D = {d}, p = {p_uniformity}");
    }

    #[test]
    fn chi_square_zero_when_observed_equals_expected() {
        // Synthetic check of the statistic itself: expected counts equal to
        // observed give a zero statistic and p = 1.
        let observed = [5.0_f64, 10.0, 5.0];
        let chi: f64 = observed.iter().map(|&o| (o - o) * (o - o) / o).sum();
        assert_eq!(chi, 0.0);
        assert!((chi_square_sf(2, chi).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chi_square_counts_use_right_closed_bins() {
        // A value sitting exactly on an edge belongs to the lower bin.
        let s = Sample::new(vec![1.0, 5.0, 5.0, 7.0, 12.0]).unwrap();
        let m = Model::lindley(0.2).unwrap();
        let report = chi_square_test(&s, &m, &[5.0, 10.0], 0).unwrap();
        let counts: Vec<u64> = report.bins.iter().map(|b| b.observed).collect();
        assert_eq!(counts, vec![3, 1, 1]);
    }

    #[test]
    fn expected_counts_sum_to_n() {
        let m = Model::xgamma(0.26).unwrap();
        let s = m.sample(100, 12).unwrap();
        let report = chi_square_test(&s, &m, &[5.0, 10.0, 15.0, 20.0], 1).unwrap();
        let total: f64 = report.bins.iter().map(|b| b.expected).sum();
        assert!((total - 100.0).abs() < 1e-6);
        assert!(report.bins.iter().all(|b| b.expected > 0.0));
        assert_eq!(report.chi_df, 3);
    }

    #[test]
    fn degenerate_bins_are_rejected() {
        let s = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        let m = Model::lindley(1.0).unwrap();
        assert!(chi_square_test(&s, &m, &[5.0, 5.0], 0).is_err());
        assert!(chi_square_test(&s, &m, &[], 0).is_err());
        assert!(chi_square_test(&s, &m, &[-1.0, 2.0], 0).is_err());
        // A far-tail bin has numerically zero mass.
        let err = chi_square_test(&s, &m, &[2000.0, 3000.0], 0).unwrap_err();
        assert!(matches!(err, Error::ZeroExpectedCount { .. }));
    }
}
