//! Lambert W (principal branch), Dawson's integral, the Faddeeva function
//! and square roots with prescribed cuts.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{E, PI};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type ComplexPoint = Complex64;

const HALLEY_BUDGET: usize = 50;

/// Coefficients of `W0` in powers of `p = sqrt(2 (e z + 1))`.
const BRANCH_SERIES: [f64; 10] = [
    -1.0,
    1.0,
    -1.0 / 3.0,
    11.0 / 72.0,
    -43.0 / 540.0,
    769.0 / 17280.0,
    -221.0 / 8505.0,
    680863.0 / 43545600.0,
    -1963.0 / 204120.0,
    226287557.0 / 37623398400.0,
];

/// Treats a negative-zero imaginary part as `+0`, so points on a cut take
/// the value from the upper half-plane.
fn upper(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Principal branch of the Lambert W function.
///
/// On the cut `(-inf, -1/e)` the limit from above is returned. Arguments
/// within a few ulps of `-1/e` are taken to be the branch point itself.
pub fn lambert_w0(z: ComplexPoint) -> Result<ComplexPoint> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::EvaluationFailure(format!("lambert_w0 at non-finite {z}")));
    }
    let z = upper(z);
    if z.is_zero() {
        return Ok(Complex64::zero());
    }
    let q = z * E + 1.0;
    if q.norm() <= 8.0 * f64::EPSILON {
        return Ok(Complex64::new(-1.0, 0.0));
    }
    let p = (q * 2.0).sqrt();
    // ten terms leave an error below |p|^10 / 100
    if p.norm() < 0.05 {
        return Ok(horner(&BRANCH_SERIES, p));
    }
    let mut seeds: Vec<Complex64> = Vec::with_capacity(4);
    if q.norm() < 0.5 {
        seeds.push(horner(&BRANCH_SERIES, p));
    }
    if z.norm() < 0.18 {
        // sum (-n)^(n-1) z^n / n!
        let mut term = z;
        let mut acc = z;
        for n in 1..8u32 {
            let nf = n as f64;
            let ratio = -((nf + 1.0) / nf).powi(n as i32 - 1);
            term = term * z * ratio;
            acc += term;
        }
        seeds.push(acc);
    }
    if z.norm() > 3.0 {
        let l1 = z.ln();
        seeds.push(l1 - l1.ln());
    }
    if q.norm() < 2.0 {
        seeds.push(horner(&BRANCH_SERIES[..3], p));
    }
    if (z + 1.0).norm() > 0.1 {
        seeds.push((z + 1.0).ln());
    }
    for seed in seeds {
        if let Some(w) = halley(z, seed).filter(|w| on_principal_branch(*w)) {
            return Ok(w);
        }
    }
    Err(Error::NoConvergence(format!("lambert_w0({z})")))
}

fn halley(z: Complex64, mut w: Complex64) -> Option<Complex64> {
    let mut last_step = f64::INFINITY;
    for _ in 0..HALLEY_BUDGET {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (wp1 * 2.0);
        let dw = f / denom;
        w -= dw;
        if !(w.re.is_finite() && w.im.is_finite()) {
            return None;
        }
        let step = dw.norm();
        let scale = 1.0 + w.norm();
        // near the branch point rounding noise keeps the step from reaching 4 ulps
        if step <= 4.0 * f64::EPSILON * scale || (step >= last_step && last_step < 1e-10 * scale) {
            return Some(w);
        }
        last_step = step;
    }
    None
}

/// The range of `W0` is bounded by `-y cot y + i y`, `|y| < pi`; its top
/// edge is included so that the cut takes the value from above.
fn on_principal_branch(w: Complex64) -> bool {
    let y = w.im;
    if y == 0.0 {
        return w.re >= -1.0 - 1e-8;
    }
    y.abs() <= PI && w.re >= -y * y.cos() / y.sin() - 1e-8 * (1.0 + w.norm())
}

fn horner(c: &[f64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, &a| acc * x + a)
}

/// Dawson's integral `exp(-x^2) * integral_0^x exp(t^2) dt`.
pub fn dawson(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax <= 5.0 { dawson_series(ax) } else { dawson_cf(ax) };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// `exp(-x^2) sum x^(2n+1) / (n! (2n+1))`; all terms positive.
fn dawson_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x; // x^(2n+1) / n!
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= x2 / n;
        let add = term / (2.0 * n + 1.0);
        sum += add;
        if add <= sum * 1e-17 {
            break;
        }
    }
    sum * (-x2).exp()
}

/// `x / (1 + 2x^2 - 4x^2 / (3 + 2x^2 - 8x^2 / (5 + 2x^2 - ...)))`.
fn dawson_cf(x: f64) -> f64 {
    let x2 = x * x;
    let mut tail = 0.0;
    for k in (1..=60).rev() {
        let kf = k as f64;
        tail = 4.0 * kf * x2 / (2.0 * kf + 1.0 + 2.0 * x2 - tail);
    }
    x / (1.0 + 2.0 * x2 - tail)
}

/// `sqrt((z - lo)(z - hi))` analytic off `[lo, hi]` and asymptotic to `z`.
/// Points on the segment get the value from above.
pub fn principal_sqrt_offcut(z: ComplexPoint, cut_lo: f64, cut_hi: f64) -> ComplexPoint {
    let z = upper(z);
    (z - cut_lo).sqrt() * (z - cut_hi).sqrt()
}

/// Faddeeva function `w(z) = exp(-z^2) erfc(-i z)` on the closed upper
/// half-plane, via Weideman's rational expansion with `N` terms.
#[derive(Clone, Debug)]
pub struct Faddeeva {
    coeffs: Vec<f64>,
    l: f64,
}

impl Default for Faddeeva {
    fn default() -> Self {
        Self::new(40)
    }
}

impl Faddeeva {
    /// Beyond this modulus the continued fraction is used instead.
    pub const CF_RADIUS: f64 = 12.0;

    pub fn new(n: usize) -> Self {
        let m = 2 * n;
        let l = (n as f64 / core::f64::consts::SQRT_2).sqrt();
        let mf = m as f64;
        let samples: Vec<(f64, f64)> = (1..m)
            .map(|k| {
                let t = l * (k as f64 * PI / mf / 2.0).tan();
                (k as f64, (-t * t).exp() * (l * l + t * t))
            })
            .collect();
        // F(k) is even in k and F(-M) = 0
        let f0 = l * l;
        let coeffs = (1..=n)
            .map(|j| {
                let jf = j as f64;
                let s: f64 = samples
                    .iter()
                    .map(|&(k, f)| 2.0 * f * (PI * jf * k / mf).cos())
                    .sum();
                (s + f0) / (2.0 * mf)
            })
            .collect();
        Faddeeva { coeffs, l }
    }

    /// Requires `Im z >= 0`.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if z.norm() > Self::CF_RADIUS {
            return faddeeva_cf(z);
        }
        let i = Complex64::i();
        let den = i * (-z) + self.l;
        let zz = (i * z + self.l) / den;
        let p = horner(&self.coeffs, zz);
        p * 2.0 / (den * den) + 1.0 / (PI.sqrt() * den)
    }
}

/// Tail `K(z) = (1/2)/(z - 1/(z - (3/2)/(z - ...)))` of the Laplace continued
/// fraction `w(z) = (i/sqrt(pi)) / (z - K(z))`, accurate for large `|z|` with `Im z >= 0`.
pub fn laplace_tail(z: Complex64) -> Complex64 {
    let mut tail = Complex64::zero();
    for k in (1..=80).rev() {
        tail = Complex64::new(k as f64 / 2.0, 0.0) / (z - tail);
    }
    tail
}

fn faddeeva_cf(z: Complex64) -> Complex64 {
    Complex64::i() / (PI.sqrt() * (z - laplace_tail(z)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambert_special_values() {
        assert!((lambert_w0(c(-1.0 / E, 0.0)).unwrap() - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((lambert_w0(c(E, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(lambert_w0(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        // fixed point of w = 0.1 exp(-w)
        let mut w = 0.0f64;
        for _ in 0..200 {
            w = 0.1 * (-w).exp();
        }
        assert!((lambert_w0(c(0.1, 0.0)).unwrap().re - w).abs() < 1e-15);
        assert!((w - 0.09127652716).abs() < 1e-10);
    }

    #[test]
    fn lambert_cut_takes_upper_value() {
        let above = lambert_w0(c(-2.0, 0.0)).unwrap();
        let neg_zero = lambert_w0(c(-2.0, -0.0)).unwrap();
        assert!(above.im > 0.0);
        assert_eq!(above, neg_zero);
        let near = lambert_w0(c(-2.0, 1e-14)).unwrap();
        assert!((near - above).norm() < 1e-12);
    }

    #[test]
    fn dawson_values() {
        assert_eq!(dawson(0.0), 0.0);
        assert!((dawson(1.0) - 0.5380795069127684).abs() < 1e-15);
        assert_eq!(dawson(-1.3), -dawson(1.3));
        // both representations agree where they meet
        let (a, b) = (dawson_series(5.0), dawson_cf(5.0));
        assert!((a - b).abs() < 1e-15 * a);
    }

    #[test]
    fn sqrt_branches() {
        assert!((principal_sqrt_offcut(c(2.0, 0.0), -1.0, 1.0) - c(3f64.sqrt(), 0.0)).norm() < 1e-15);
        let s = principal_sqrt_offcut(c(0.0, 0.0), -2f64.sqrt(), 2f64.sqrt());
        assert!((s - c(0.0, 2f64.sqrt())).norm() < 1e-15);
        assert!((principal_sqrt_offcut(c(5.0, 0.0), 0.0, 4.0) - c(5f64.sqrt(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn faddeeva_matches_dawson_on_the_axis() {
        let f = Faddeeva::default();
        for k in 0..=60 {
            let x = -6.0 + 0.2 * k as f64;
            let w = f.eval(c(x, 0.0));
            let expect = c((-x * x).exp(), 2.0 / PI.sqrt() * dawson(x));
            assert!((w - expect).norm() < 1e-14, "x={x} {w} {expect}");
        }
    }

    #[test]
    fn faddeeva_is_continuous_across_the_cf_switch() {
        let f = Faddeeva::default();
        for k in 0..16 {
            let th = PI * k as f64 / 15.0;
            let z = c(12.0 * th.cos(), 12.0 * th.sin());
            let a = f.eval(z * (1.0 - 1e-14));
            let b = faddeeva_cf(z);
            assert!((a - b).norm() < 1e-13 * b.norm() + 1e-15, "{z}: {a} {b}");
        }
    }
}
