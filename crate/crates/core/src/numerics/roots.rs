//! Scalar root finding on a bracketing interval.

use crate::error::{Error, Result};

/// Root of `f` on `bracket = (lo, hi)` with `f(lo)·f(hi) < 0`.
///
/// Bisection with a secant step whenever the secant iterate falls inside the
/// current bracket; every monotone target in this crate converges in a few
/// dozen evaluations. Iterates until `|f| ≤ tol` or the bracket collapses to
/// machine width, whichever comes first.
pub fn find_root<F: FnMut(f64) -> f64>(mut f: F, bracket: (f64, f64), tol: f64) -> Result<f64> {
    let (mut a, mut b) = bracket;
    if a.is_nan() || b.is_nan() || a >= b {
        return Err(Error::NoBracket { lo: a, hi: b });
    }
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoBracket { lo: a, hi: b });
    }

    let mut best = if fa.abs() < fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    for _ in 0..200 {
        // Secant proposal, clipped away from the bracket ends.
        let secant = b - fb * (b - a) / (fb - fa);
        let width = b - a;
        let mid = 0.5 * (a + b);
        let x = if secant > a + 0.01 * width && secant < b - 0.01 * width {
            secant
        } else {
            mid
        };
        let fx = f(x);
        if fx.abs() < best.1.abs() {
            best = (x, fx);
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        let scale = best.0.abs().max(1.0);
        if best.1.abs() <= tol && (b - a) <= tol * scale {
            return Ok(best.0);
        }
        // Bracket collapsed to adjacent floats: no further progress possible.
        if (b - a) <= f64::EPSILON * scale {
            return Ok(best.0);
        }
    }
    Ok(best.0)
}

/// Grows `hi` geometrically (and shrinks `lo`) until `f` changes sign, up to
/// `max_steps` doublings.
pub fn expand_bracket<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    max_steps: u32,
) -> Result<(f64, f64)> {
    let mut flo = f(lo);
    let mut fhi = f(hi);
    for _ in 0..max_steps {
        if flo.signum() != fhi.signum() || flo == 0.0 || fhi == 0.0 {
            return Ok((lo, hi));
        }
        lo *= 0.25;
        hi *= 4.0;
        flo = f(lo);
        fhi = f(hi);
    }
    Err(Error::NoBracket { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let r = find_root(|x| x - 2.0, (0.0, 5.0), 1e-10).unwrap();
        assert!((r - 2.0).abs() < 1e-9);
    }

    #[test]
    fn sqrt_two() {
        let r = find_root(|x| x * x - 2.0, (1.0, 2.0), 1e-10).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-7);
    }

    #[test]
    fn rejects_missing_sign_change() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, (0.0, 1.0), 1e-10),
            Err(Error::NoBracket { .. })
        ));
        assert!(find_root(|x| x, (2.0, 1.0), 1e-10).is_err());
    }

    #[test]
    fn expansion_finds_a_sign_change() {
        let (lo, hi) = expand_bracket(|x| x - 50.0, 1e-8, 1.0, 40).unwrap();
        assert!(lo < 50.0 && hi > 50.0);
        assert!(expand_bracket(|x| x + 1.0, 1e-8, 1.0, 10).is_err());
    }

    #[test]
    fn steep_function_reaches_small_residual() {
        let mut evals = 0u32;
        let r = find_root(
            |x| {
                evals += 1;
                1250.0 * (x - 0.0407)
            },
            (1e-4, 1.0),
            1e-10,
        )
        .unwrap();
        assert!((1250.0 * (r - 0.0407)).abs() <= 1e-10);
        assert!(evals < 120, "took {evals} evaluations");
    }
}
