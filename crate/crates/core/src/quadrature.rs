//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 52;

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        // Richardson extrapolation over the two half-interval rules
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureNonConvergence { a, b });
    }
    Ok(recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

/// Integrates `f` over [a, b] to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::InvalidParameter(format!("bad interval [{a}, {b}]")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("bad tolerance {tol}")));
    }
    if a == b {
        return Ok(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    recurse(f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

/// Integrates `f` over consecutive knot intervals, splitting the tolerance
/// proportionally to interval length. Used for piecewise-smooth integrands
/// whose kink locations are known.
pub fn adaptive_simpson_segmented<F: Fn(f64) -> f64>(
    f: &F,
    knots: &[f64],
    tol: f64,
) -> Result<f64> {
    if knots.len() < 2 {
        return Err(Error::InvalidParameter("need at least two knots".into()));
    }
    if knots.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("knots must be sorted ascending".into()));
    }
    let total: f64 = knots[knots.len() - 1] - knots[0];
    if total == 0.0 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for w in knots.windows(2) {
        let len = w[1] - w[0];
        if len > 0.0 {
            sum += adaptive_simpson(f, w[0], w[1], tol * (len / total).max(1e-3))?;
        }
    }
    Ok(sum)
}
