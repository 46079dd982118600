//! Generic solver for the `sigma = 0` case, where the ODE for `S` is the
//! Riccati equation `S' = S^2 + ((b - a')/a) S - b'/a`.
//!
//! `-b/a` is a particular solution, so every solution has the form
//! `S = -b/a - (h/a) / (I(z) + C)` with `h = exp(-int b/a)` and
//! `I = int h/a`. Both integrals start at a fixed anchor `z0` in the upper
//! half-plane and follow the straight segment to `z`; the logarithmic part
//! of `int b/a` is done in closed form by partial fractions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Zero;

use crate::asymptotic::stieltjes::{to_upper, unflip, StieltjesEvaluator};
use crate::asymptotic::{series_coeffs, LimitPair, ScalingLaw};
use crate::error::{Error, Result};
use crate::quad;
use crate::util;

/// `int b/a` split into pieces with elementary primitives.
#[derive(Clone, Debug)]
enum Primitive {
    /// `A1/(z-r1) + A2/(z-r2)`
    TwoRoots { r: [Complex64; 2], k: [Complex64; 2] },
    /// `p/(z-r) + q/(z-r)^2`
    DoubleRoot { r: f64, p: f64, q: f64 },
    /// `k + p/(z-r)`
    Linear { r: f64, k: f64, p: f64 },
    /// `k1 z + k0`
    Polynomial { k1: f64, k0: f64 },
}

impl Primitive {
    fn new(lp: &LimitPair) -> Self {
        let [a2, a1, a0, b1, b0] = lp.to_f64();
        let b = |z: Complex64| z * b1 + b0;
        if !lp.a2.is_zero() {
            let disc = &lp.a1 * &lp.a1 - util::int(4) * &lp.a2 * &lp.a0;
            if disc.is_zero() {
                let r = -a1 / (2.0 * a2);
                Primitive::DoubleRoot { r, p: b1 / a2, q: (b1 * r + b0) / a2 }
            } else {
                let sq = Complex64::new(util::rational_to_f64(&disc), 0.0).sqrt();
                // the root that avoids cancellation first, then Vieta
                let r1 = if a1 >= 0.0 { (-a1 - sq) / (2.0 * a2) } else { (-a1 + sq) / (2.0 * a2) };
                let r2 = Complex64::new(a0 / a2, 0.0) / r1;
                let k1 = b(r1) / (2.0 * a2 * r1 + a1);
                let k2 = b(r2) / (2.0 * a2 * r2 + a1);
                Primitive::TwoRoots { r: [r1, r2], k: [k1, k2] }
            }
        } else if !lp.a1.is_zero() {
            let r = -a0 / a1;
            Primitive::Linear { r, k: b1 / a1, p: (b1 * r + b0) / a1 }
        } else {
            Primitive::Polynomial { k1: b1 / a0, k0: b0 / a0 }
        }
    }

    fn roots(&self) -> Vec<Complex64> {
        match self {
            Primitive::TwoRoots { r, .. } => r.to_vec(),
            Primitive::DoubleRoot { r, .. } | Primitive::Linear { r, .. } => {
                alloc::vec![Complex64::new(*r, 0.0)]
            }
            Primitive::Polynomial { .. } => Vec::new(),
        }
    }

    /// `int_{z0}^{z} b/a` along the segment. The principal `Log` of
    /// `(z-r)/(z0-r)` is exact there because the angle the segment subtends
    /// at `r` stays inside `(-pi, pi)`.
    fn integral(&self, z0: Complex64, z: Complex64) -> Complex64 {
        let lg = |r: Complex64| ((z - r) / (z0 - r)).ln();
        match *self {
            Primitive::TwoRoots { r, k } => k[0] * lg(r[0]) + k[1] * lg(r[1]),
            Primitive::DoubleRoot { r, p, q } => {
                let rc = Complex64::new(r, 0.0);
                p * lg(rc) - q * ((z - r).inv() - (z0 - r).inv())
            }
            Primitive::Linear { r, k, p } => k * (z - z0) + p * lg(Complex64::new(r, 0.0)),
            Primitive::Polynomial { k1, k0 } => 0.5 * k1 * (z * z - z0 * z0) + k0 * (z - z0),
        }
    }
}

/// Laurent series at infinity, summed until its terms stop decreasing.
#[derive(Clone, Debug)]
struct AsymptoticSeries {
    c: Vec<f64>,
}

impl AsymptoticSeries {
    /// Value and the size of the first omitted term.
    fn eval(&self, z: Complex64) -> (Complex64, f64) {
        let w = z.inv();
        let mut pow = w;
        let mut sum = Complex64::zero();
        let mut prev = f64::INFINITY;
        let mut tail = [f64::INFINITY; 2];
        for (i, &c) in self.c.iter().enumerate() {
            let term = pow * c;
            let m = term.norm();
            // vanishing coefficients do not end the sum
            if i > 4 && m > prev && m > 0.0 {
                return (sum, m);
            }
            if m > 0.0 {
                prev = m;
            }
            tail = [tail[1], m];
            sum += term;
            pow *= w;
        }
        (sum, tail[0].max(tail[1]))
    }
}

#[derive(Clone, Debug)]
struct Riccati {
    a: [f64; 3],
    b: [f64; 2],
    prim: Primitive,
    z0: Complex64,
    c: Complex64,
    /// Beyond this radius the series is used when it is accurate.
    radius: f64,
    /// `a` has no non-real zeros, so vertical paths in the upper
    /// half-plane avoid them.
    real_roots: bool,
    series: AsymptoticSeries,
}

const SERIES_TERMS: usize = 60;

impl Riccati {
    fn a(&self, z: Complex64) -> Complex64 {
        (z * self.a[0] + self.a[1]) * z + self.a[2]
    }

    fn b(&self, z: Complex64) -> Complex64 {
        z * self.b[0] + self.b[1]
    }

    fn h_over_a(&self, z: Complex64) -> Complex64 {
        (-self.prim.integral(self.z0, z)).exp() / self.a(z)
    }

    /// `int h/a` along the segment `from -> to`.
    ///
    /// Next to a zero of `a` the integrand has a sharp peak whose rounding
    /// noise can keep the estimate above `1e-14`; the retry accepts `1e-11`.
    fn path_integral(&self, from: Complex64, to: Complex64) -> Result<Complex64> {
        let d = to - from;
        let f = |s: f64| {
            let v = self.h_over_a(from + d * s) * d;
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::QuadratureFailure(format!("h/a is not finite on the path to {to}")))
            }
        };
        match quad::integrate(f, 0.0, 1.0, 1e-300, 1e-14) {
            Err(Error::QuadratureFailure(_)) => quad::integrate(f, 0.0, 1.0, 1e-300, 1e-11),
            r => r,
        }
    }

    /// `u = I + C`, the linearizing solution: `S = -b/a - (h/a)/u`.
    fn u_from_anchor(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.path_integral(self.z0, z)? + self.c)
    }

    /// `u` carried down from `Re z + iT`, where the series gives `S` and so
    /// `u = -(h/a)/(S + b/a)`. Returns `u` and `|h/a|` at the top, or `None`
    /// when the series is not accurate there.
    fn u_from_above(&self, z: Complex64) -> Result<Option<(Complex64, f64)>> {
        let top = Complex64::new(z.re, self.radius.max(z.im));
        let (s, err) = self.series.eval(top);
        if err > 1e-15 * s.norm() {
            return Ok(None);
        }
        let ha = self.h_over_a(top);
        let u_top = -ha / (s + self.b(top) / self.a(top));
        Ok(Some((u_top + self.path_integral(top, z)?, ha.norm())))
    }

    fn formula(&self, z: Complex64) -> Result<Complex64> {
        let a = self.a(z);
        Ok(-self.b(z) / a - self.h_over_a(z) / self.u_from_anchor(z)?)
    }

    /// `S` for `Im z >= 0`.
    ///
    /// `u` is taken along whichever path starts where `|h/a|` is smaller:
    /// where `h` decays, `I + C` would cancel to a tiny remainder, while
    /// integrating towards growing `h` keeps full relative accuracy.
    fn eval_upper(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= self.radius {
            let (s, err) = self.series.eval(z);
            if err <= 1e-15 * s.norm() {
                return Ok(s);
            }
        }
        let a = self.a(z);
        let ha = self.h_over_a(z);
        let from_anchor = self.h_over_a(self.z0).norm();
        let u = match self.real_roots {
            true => match self.u_from_above(z)? {
                Some((u, w)) if w < from_anchor => u,
                _ => self.u_from_anchor(z)?,
            },
            false => self.u_from_anchor(z)?,
        };
        Ok(-self.b(z) / a - ha / u)
    }
}

/// Solves the Riccati case for the limit data `lp`, fixing `C` so that
/// `z S(z) -> 1`.
///
/// `C` is matched to the Laurent series of `S` on the imaginary axis at a
/// radius well outside the zeros of `a`, where the series is accurate, and
/// checked against the series at a second point. The match radius is doubled
/// up to five times before giving up.
pub fn riccati_solve(lp: &LimitPair) -> Result<StieltjesEvaluator> {
    if lp.a().is_zero() {
        return Err(Error::BadParam("a(z) vanishes identically".into()));
    }
    let zero = ScalingLaw::new(util::int(0))?;
    let c = series_coeffs(lp, &zero, SERIES_TERMS)?.to_f64();
    let [a2, a1, a0, b1, b0] = lp.to_f64();
    let prim = Primitive::new(lp);
    let rmax = prim.roots().iter().map(|r| r.norm()).fold(1.0, f64::max);
    let real_roots = prim.roots().iter().all(|r| r.im == 0.0);
    let z0 = Complex64::new(0.0, 1.0 + rmax);
    let mut rc = Riccati {
        a: [a2, a1, a0],
        b: [b1, b0],
        prim,
        z0,
        c: Complex64::zero(),
        radius: f64::INFINITY,
        real_roots,
        series: AsymptoticSeries { c },
    };
    let mut y = (4.0 * (1.0 + rmax)).max(10.0);
    let mut last = String::new();
    for _ in 0..6 {
        let big_z = Complex64::new(0.0, y);
        let (s, err) = rc.series.eval(big_z);
        if err <= 1e-15 * s.norm() {
            let ha = rc.h_over_a(big_z);
            rc.c = -ha / (s + rc.b(big_z) / rc.a(big_z)) - rc.path_integral(rc.z0, big_z)?;
            let check = Complex64::from_polar(1.2 * y, core::f64::consts::FRAC_PI_4);
            let (s2, err2) = rc.series.eval(check);
            let f2 = rc.formula(check)?;
            let dev = (f2 - s2).norm();
            if err2 <= 1e-15 * s2.norm() && dev <= 1e-10 * s2.norm() {
                rc.radius = y;
                let support = (f64::NEG_INFINITY, f64::INFINITY);
                return Ok(StieltjesEvaluator::new(format!("riccati[{lp}]"), support, move |z| {
                    let (zu, flipped) = to_upper(z);
                    Ok(unflip(rc.eval_upper(zu)?, flipped))
                }));
            }
            last = format!("check at {check} deviates by {dev:e}");
        } else {
            last = format!("series not converged at |z| = {y}");
        }
        y *= 2.0;
    }
    Err(Error::NormalizationFailure(last))
}
