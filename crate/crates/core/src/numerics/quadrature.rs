//! Adaptive Gauss–Kronrod quadrature over the positive half-line.
//!
//! The half-line is mapped to the unit interval with `x = t/(1−t)`, after
//! which a 7/15-point Gauss–Kronrod rule is applied with recursive
//! bisection. All integrands here are products of polynomials, logarithms
//! and decaying exponentials, which the transformation renders smooth.

use crate::distributions::Model;
use crate::error::{Error, Result};

/// Tolerance and recursion budget for the adaptive integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Absolute tolerance on the whole integral.
    pub abs_tol: f64,
    /// Maximum bisection depth per branch.
    pub max_depth: u32,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            max_depth: 60,
        }
    }
}

impl QuadratureSpec {
    pub fn with_tol(abs_tol: f64) -> Result<Self> {
        if !abs_tol.is_finite() || abs_tol <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "quadrature tolerance must be > 0, got {abs_tol}"
            )));
        }
        Ok(Self {
            abs_tol,
            ..Self::default()
        })
    }
}

// 15-point Kronrod abscissae on [-1, 1] (positive half; the rule is symmetric)
// and the matching Kronrod / 7-point Gauss weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss–Kronrod panel on `[a, b]`; returns the Kronrod estimate and
/// `|K − G|` as its error proxy.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);

    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;

    for j in 0..7 {
        let x = half * XGK[j];
        let fsum = f(center - x) + f(center + x);
        resk += WGK[j] * fsum;
        if j % 2 == 1 {
            // the odd Kronrod nodes are the embedded Gauss-7 nodes
            resg += WG[j / 2] * fsum;
        }
    }
    (resk * half, (resk - resg).abs() * half)
}

struct Adaptive<'a, F> {
    f: &'a F,
    tol_per_unit: f64,
    max_depth: u32,
    value: f64,
    error: f64,
    converged: bool,
}

impl<F: Fn(f64) -> f64> Adaptive<'_, F> {
    fn run(&mut self, a: f64, b: f64, depth: u32) {
        let (v, e) = gk15(self.f, a, b);
        if e <= self.tol_per_unit * (b - a) || e == 0.0 {
            self.value += v;
            self.error += e;
            return;
        }
        if depth >= self.max_depth {
            self.value += v;
            self.error += e;
            self.converged = false;
            return;
        }
        let mid = 0.5 * (a + b);
        self.run(a, mid, depth + 1);
        self.run(mid, b, depth + 1);
    }
}

/// `∫₀^∞ f(x) dx` with an error bound alongside the value.
pub fn integrate_halfline_with_error<F: Fn(f64) -> f64>(
    f: F,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    // x = t/(1−t) maps (0,1) → (0,∞) with dx = dt/(1−t)².
    let transformed = |t: f64| {
        let one_minus = 1.0 - t;
        let x = t / one_minus;
        let v = f(x) / (one_minus * one_minus);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    let mut state = Adaptive {
        f: &transformed,
        tol_per_unit: spec.abs_tol,
        max_depth: spec.max_depth,
        value: 0.0,
        error: 0.0,
        converged: true,
    };
    state.run(0.0, 1.0, 0);
    if !state.converged && state.error > spec.abs_tol {
        return Err(Error::QuadratureNonConvergence {
            estimate: state.value,
            error_bound: state.error,
        });
    }
    Ok((state.value, state.error))
}

/// `∫₀^∞ f(x) dx` to the requested absolute tolerance.
pub fn integrate_halfline<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    integrate_halfline_with_error(f, spec).map(|(v, _)| v)
}

/// `E[h(X)]` under `model`, i.e. `∫₀^∞ h(x) f(x) dx`.
///
/// Covariances follow by composition: `Cov[g,h] = E[gh] − E[g]E[h]`.
pub fn expect<F: Fn(f64) -> f64>(model: &Model, h: F, spec: &QuadratureSpec) -> Result<f64> {
    integrate_halfline(|x| h(x) * model.density(x), spec)
}
