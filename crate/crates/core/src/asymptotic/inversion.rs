//! Density recovery from a Stieltjes transform: `pdf(t) = -Im S(t + i0) / pi`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::asymptotic::measure::{LimitMeasure, MeasureSource};
use crate::asymptotic::stieltjes::StieltjesEvaluator;
use crate::error::{Error, Result};
use crate::quad;

/// One extrapolated density value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InversionPoint {
    pub t: f64,
    pub pdf: f64,
    /// Difference of the last two extrapolants.
    pub err: f64,
}

/// `y_j = 1e-2 * 4^-j`, `j = 0..6`.
pub fn default_schedule() -> Vec<f64> {
    (0..6).map(|j| 1e-2 * 0.25f64.powi(j)).collect()
}

/// Neville extrapolation of `(x_j, v_j)` to `x = 0`. Returns the value and
/// the difference between the two highest-order estimates.
fn neville_at_zero(x: &[f64], v: &[f64]) -> (f64, f64) {
    let mut p = v.to_vec();
    let m = p.len();
    let mut prev = f64::INFINITY;
    for k in 1..m {
        if k == m - 1 {
            // estimate from the finest m - 1 points
            prev = p[1];
        }
        for i in 0..m - k {
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
        }
    }
    (p[0], (p[0] - prev).abs())
}

/// `-Im S(t + i y) / pi` extrapolated to `y -> 0+` by polynomial
/// extrapolation over `y_schedule`.
///
/// Fails with `ExtrapolationDiverged(t)` when the estimate is unstable
/// (error above `1e-3 (1 + |pdf|)`), which happens at atoms and at
/// singular points of the density.
pub fn invert(s: &StieltjesEvaluator, t_grid: &[f64], y_schedule: &[f64]) -> Result<Vec<InversionPoint>> {
    if y_schedule.is_empty() || y_schedule.iter().any(|&y| !(y > 0.0)) {
        return Err(Error::BadParam("the y schedule must be positive and nonempty".into()));
    }
    if y_schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::BadParam("the y schedule must be strictly decreasing".into()));
    }
    t_grid
        .iter()
        .map(|&t| {
            let v = y_schedule
                .iter()
                .map(|&y| Ok(-s.evaluate(Complex64::new(t, y))?.im / PI))
                .collect::<Result<Vec<f64>>>()?;
            let (pdf, err) = neville_at_zero(y_schedule, &v);
            if !pdf.is_finite() || err > 1e-3 * (1.0 + pdf.abs()) {
                return Err(Error::ExtrapolationDiverged(t));
            }
            Ok(InversionPoint { t, pdf, err })
        })
        .collect()
}

/// `psi((-inf, t])` through the logarithmic potential
/// `L(z) = int log(z - x) dpsi(x)`, for which `L' = S` and
/// `Im L(t + i0) = pi (1 - psi(t))` away from atoms.
///
/// `L(t + iY)` comes from `log z - sum_k mu_k / (k z^k)` at a height `Y`
/// well above `radius` (a bound on the support or the window), and
/// `Im L(t + i0) = Im L(t + iY) - int_0^Y Re S(t + iy) dy`.
/// `moments[k]` is `mu_k`; the expansion stops once its terms grow. The
/// result is good to about `1e-10`.
pub fn cdf_from_potential(s: &StieltjesEvaluator, moments: &[f64], radius: f64, t: f64) -> Result<f64> {
    let top = 10.0 * (1.0 + radius.abs().max(t.abs()));
    let z = Complex64::new(t, top);
    let mut l = z.ln();
    let mut zk = z;
    let mut last = f64::INFINITY;
    for (k, &m) in moments.iter().enumerate().skip(1) {
        let term = m / (k as f64 * zk);
        if term.norm() > last && term.norm() > 0.0 {
            break;
        }
        if term.norm() > 0.0 {
            last = term.norm();
        }
        l -= term;
        zk *= z;
    }
    // y = u^2 absorbs the inverse square root of S at a soft edge
    let drop = quad::integrate(
        |u: f64| Ok(2.0 * u * s.evaluate(Complex64::new(t, u * u))?.re),
        0.0,
        top.sqrt(),
        1e-11,
        1e-10,
    )?;
    Ok((1.0 - (l.im - drop) / PI).clamp(0.0, 1.0))
}

/// Law with the density recovered by [`invert`] and the CDF by
/// [`cdf_from_potential`]; `[lo, hi]` must contain the support, or bound the
/// window of interest when the support is unbounded.
pub fn inverted_measure(
    s: StieltjesEvaluator,
    lo: f64,
    hi: f64,
    moments: Vec<f64>,
    source: MeasureSource,
) -> LimitMeasure {
    let sched = default_schedule();
    let pdf = {
        let s = s.clone();
        move |t: f64| Ok(invert(&s, &[t], &sched)?[0].pdf.max(0.0))
    };
    let cdf = {
        let s = s.clone();
        let radius = lo.abs().max(hi.abs());
        move |t: f64| cdf_from_potential(&s, &moments, radius, t)
    };
    LimitMeasure::new(lo, hi, cdf, pdf, source).with_stieltjes(s)
}
