//! Limit laws: CDF, density, support and moments.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::{E, PI, SQRT_2};
use core::fmt;

use num_complex::Complex64;

use crate::asymptotic::stieltjes::{bell_point, bell_weight, closed_form_s, support_of, StieltjesEvaluator};
use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::{dawson, lambert_w0};

type RealFn = dyn Fn(f64) -> Result<f64> + Send + Sync;
type MomentFn = dyn Fn(u32) -> Result<f64> + Send + Sync;

/// Where a limit law came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureSource {
    ClosedForm(String),
    Riccati,
    Inverted,
    Custom,
}

impl fmt::Display for MeasureSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSource::ClosedForm(_) => write!(f, "closed_form"),
            MeasureSource::Riccati => write!(f, "riccati"),
            MeasureSource::Inverted => write!(f, "inverted"),
            MeasureSource::Custom => write!(f, "custom"),
        }
    }
}

/// A probability measure on the line given by its CDF and density.
#[derive(Clone)]
pub struct LimitMeasure {
    pub support_lo: f64,
    pub support_hi: f64,
    cdf: Arc<RealFn>,
    pdf: Arc<RealFn>,
    atoms: Vec<(f64, f64)>,
    moment_rule: Option<Arc<MomentFn>>,
    pub stieltjes: Option<StieltjesEvaluator>,
    pub source: MeasureSource,
}

impl fmt::Debug for LimitMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LimitMeasure")
            .field("support", &(self.support_lo, self.support_hi))
            .field("atoms", &self.atoms)
            .field("source", &self.source)
            .finish()
    }
}

impl LimitMeasure {
    /// `cdf` and `pdf` are only called inside the support.
    pub fn new(
        support_lo: f64,
        support_hi: f64,
        cdf: impl Fn(f64) -> Result<f64> + Send + Sync + 'static,
        pdf: impl Fn(f64) -> Result<f64> + Send + Sync + 'static,
        source: MeasureSource,
    ) -> Self {
        LimitMeasure {
            support_lo,
            support_hi,
            cdf: Arc::new(cdf),
            pdf: Arc::new(pdf),
            atoms: Vec::new(),
            moment_rule: None,
            stieltjes: None,
            source,
        }
    }

    /// Unit mass at `x`.
    pub fn point_mass(x: f64) -> Self {
        let mut m = Self::new(x, x, |_| Ok(1.0), |_| Ok(0.0), MeasureSource::Custom);
        m.atoms.push((x, 1.0));
        m
    }

    pub fn with_stieltjes(mut self, s: StieltjesEvaluator) -> Self {
        self.stieltjes = Some(s);
        self
    }

    fn with_moments(mut self, rule: impl Fn(u32) -> Result<f64> + Send + Sync + 'static) -> Self {
        self.moment_rule = Some(Arc::new(rule));
        self
    }

    pub fn is_bounded(&self) -> bool {
        self.support_lo.is_finite() && self.support_hi.is_finite()
    }

    /// Right-continuous CDF.
    pub fn cdf(&self, t: f64) -> Result<f64> {
        if t >= self.support_hi {
            Ok(1.0)
        } else if t < self.support_lo || t == self.support_lo && self.atoms.is_empty() {
            Ok(0.0)
        } else {
            (self.cdf)(t)
        }
    }

    /// `P(X < t)`.
    pub fn cdf_left(&self, t: f64) -> Result<f64> {
        let mass: f64 = self.atoms.iter().filter(|(x, _)| *x == t).map(|(_, m)| m).sum();
        Ok(self.cdf(t)? - mass)
    }

    /// Density; zero off the support.
    pub fn pdf(&self, t: f64) -> Result<f64> {
        if t < self.support_lo || t > self.support_hi {
            Ok(0.0)
        } else {
            (self.pdf)(t)
        }
    }

    /// Smallest `T > 0` (to within 1%) with `cdf(T) > 1 - tol`; the support end when bounded.
    pub fn upper_window(&self, tol: f64) -> Result<f64> {
        if self.support_hi.is_finite() {
            return Ok(self.support_hi);
        }
        let mut hi = 1.0;
        while self.cdf(hi)? <= 1.0 - tol {
            hi *= 2.0;
            if hi > 1e6 {
                return Err(Error::EvaluationFailure("tail window not found".into()));
            }
        }
        let mut lo = 0.0;
        while hi - lo > 0.01 * hi {
            let m = 0.5 * (lo + hi);
            if self.cdf(m)? > 1.0 - tol {
                hi = m;
            } else {
                lo = m;
            }
        }
        Ok(hi)
    }
}

/// The five limit laws in closed form.
pub fn closed_form_cdf(family: &str) -> Result<LimitMeasure> {
    let (lo, hi) = support_of(family)?;
    let src = MeasureSource::ClosedForm(family.into());
    let m = match family {
        "jacobi" => LimitMeasure::new(
            lo,
            hi,
            |t| Ok(0.5 + t.asin() / PI),
            |t| Ok(1.0 / (PI * ((1.0 - t) * (1.0 + t)).sqrt())),
            src,
        ),
        "laguerre" => LimitMeasure::new(
            lo,
            hi,
            |t| Ok((2.0 * (t.sqrt() / 2.0).asin() + (t * (4.0 - t)).sqrt() / 2.0) / PI),
            |t| Ok((4.0 - t).sqrt() / (2.0 * PI * t.sqrt())),
            src,
        ),
        "hermite" => LimitMeasure::new(
            lo,
            hi,
            // 2 - t^2 can round below zero at t = -sqrt 2
            |t| {
                let w = (2.0 - t * t).max(0.0).sqrt();
                Ok(0.5 + (t * w + 2.0 * (t / SQRT_2).clamp(-1.0, 1.0).asin()) / (2.0 * PI))
            },
            |t| Ok((2.0 - t * t).max(0.0).sqrt() / PI),
            src,
        ),
        "bell" => LimitMeasure::new(lo, hi, bell_cdf, bell_pdf, src).with_moments(bell_moment),
        "inverse_erf" => {
            LimitMeasure::new(lo, hi, |t| Ok(inverse_erf_cdf(t)), |t| Ok(inverse_erf_pdf(t)), src)
                .with_moments(inverse_erf_moment)
        }
        other => return Err(Error::UnknownFamily(other.into())),
    };
    Ok(m.with_stieltjes(closed_form_s(family)?))
}

/// `W(1/t)` on the cut, taken from above.
fn bell_w(t: f64) -> Result<Complex64> {
    lambert_w0(Complex64::new(1.0 / t, 0.0))
}

/// `1 + (Im(1/W) - arg W) / pi` with `W = W(1/t + i0)`, for `-e < t < 0`.
fn bell_cdf(t: f64) -> Result<f64> {
    if t <= -E {
        return Ok(0.0);
    }
    if t >= 0.0 {
        return Ok(1.0);
    }
    let w = bell_w(t)?;
    Ok(1.0 + (w.inv().im - w.arg()) / PI)
}

/// `Im exp(W(1/t + i0)) / pi`.
fn bell_pdf(t: f64) -> Result<f64> {
    if t <= -E || t >= 0.0 {
        return Ok(0.0);
    }
    Ok(bell_w(t)?.exp().im / PI)
}

/// Moments through `t(v)`, where the density is smooth.
fn bell_moment(k: u32) -> Result<f64> {
    quad::integrate(
        |v: f64| Ok(bell_point(v).powi(k as i32) * bell_weight(v)),
        0.0,
        PI,
        1e-15,
        1e-13,
    )
}

/// `1/2 + atan((2/sqrt(pi)) exp(t^2/2) daw(t/sqrt 2)) / pi`.
pub fn inverse_erf_cdf(t: f64) -> f64 {
    let g = 2.0 / PI.sqrt() * (t * t / 2.0).exp() * dawson(t / SQRT_2);
    0.5 + g.atan() / PI
}

/// `sqrt(2/pi) / (4 exp(t^2/2) daw(t/sqrt 2)^2 + pi exp(-t^2/2))`.
pub fn inverse_erf_pdf(t: f64) -> f64 {
    let d = dawson(t / SQRT_2);
    let e = (t * t / 2.0).exp();
    (2.0 / PI).sqrt() / (4.0 * e * d * d + PI / e)
}

/// Truncation point for inverse-erf moments. For `|t| >= 2` the density is
/// below `t^2 exp(-t^2/2) / sqrt(2 pi)`, so the neglected mass of `t^8` is
/// under `1e-20`.
pub const INVERSE_ERF_TRUNCATION: f64 = 12.0;

fn inverse_erf_moment(k: u32) -> Result<f64> {
    if k % 2 == 1 {
        return Ok(0.0);
    }
    let half = quad::integrate(
        |t: f64| Ok(t.powi(k as i32) * inverse_erf_pdf(t)),
        0.0,
        INVERSE_ERF_TRUNCATION,
        1e-15,
        1e-14,
    )?;
    Ok(2.0 * half)
}

/// `mu_k = integral t^k dpsi` for `k = 0..=kmax`.
pub fn moments(lm: &LimitMeasure, kmax: u32) -> Result<Vec<f64>> {
    if let Some(rule) = &lm.moment_rule {
        return (0..=kmax).map(|k| rule(k)).collect();
    }
    if !lm.is_bounded() {
        return Err(Error::Unsupported(format!(
            "a bounded support or a moment rule ({} law)",
            lm.source
        )));
    }
    // t = c + r sin(phi) absorbs inverse square-root endpoint behaviour
    let (c, r) = (0.5 * (lm.support_lo + lm.support_hi), 0.5 * (lm.support_hi - lm.support_lo));
    let half_pi = core::f64::consts::FRAC_PI_2;
    (0..=kmax)
        .map(|k| {
            quad::integrate(
                |phi: f64| {
                    let (sn, cs) = phi.sin_cos();
                    let t = c + r * sn;
                    Ok(t.powi(k as i32) * lm.pdf(t)? * r * cs)
                },
                -half_pi,
                half_pi,
                1e-15,
                1e-12,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_spot_values() {
        let j = closed_form_cdf("jacobi").unwrap();
        assert_eq!(j.cdf(0.0).unwrap(), 0.5);
        let l = closed_form_cdf("laguerre").unwrap();
        assert!((l.cdf(4.0).unwrap() - 1.0).abs() < 1e-10);
        assert!((l.cdf(4.0 - 1e-12).unwrap() - 1.0).abs() < 1e-5);
        let h = closed_form_cdf("hermite").unwrap();
        assert_eq!(h.cdf(-SQRT_2).unwrap(), 0.0);
        assert_eq!(h.pdf(SQRT_2).unwrap(), 0.0);
        let ie = closed_form_cdf("inverse_erf").unwrap();
        assert!((ie.pdf(0.0).unwrap() - SQRT_2 / PI.powf(1.5)).abs() < 1e-15);
        let b = closed_form_cdf("bell").unwrap();
        assert!(b.cdf(-E).unwrap().abs() < 1e-8);
        assert!(b.cdf(-E + 1e-12).unwrap().abs() < 1e-8);
    }

    #[test]
    fn laguerre_antiderivative_matches_quadrature() {
        let l = closed_form_cdf("laguerre").unwrap();
        for k in 1..=20 {
            let t = 0.2 * k as f64;
            let q = quad::tanh_sinh(|x: f64, _, _| l.pdf(x), 0.0, t, 1e-13).unwrap();
            assert!((q - l.cdf(t).unwrap()).abs() < 1e-10, "t={t}");
        }
    }

    #[test]
    fn bell_cdf_is_the_integral_of_its_density() {
        let b = closed_form_cdf("bell").unwrap();
        for t in [-2.5, -2.0, -1.0, -0.5, -0.1, -0.01] {
            let q = quad::tanh_sinh(|x: f64, _, _| b.pdf(x), -E, t, 1e-12).unwrap();
            assert!((q - b.cdf(t).unwrap()).abs() < 1e-9, "t={t} {q} {}", b.cdf(t).unwrap());
        }
    }

    #[test]
    fn inverse_erf_tail_bound_holds() {
        for k in 0..200 {
            let t = 2.0 + 0.1 * k as f64;
            let bound = t * t * (-t * t / 2.0).exp() / (2.0 * PI).sqrt();
            assert!(inverse_erf_pdf(t) <= bound, "t={t}");
        }
    }

    #[test]
    fn moments_of_bounded_laws() {
        let h = moments(&closed_form_cdf("hermite").unwrap(), 2).unwrap();
        assert!((h[0] - 1.0).abs() < 1e-10 && h[1].abs() < 1e-10 && (h[2] - 0.5).abs() < 1e-10);
        let l = moments(&closed_form_cdf("laguerre").unwrap(), 3).unwrap();
        for (m, e) in l.iter().zip([1.0, 1.0, 2.0, 5.0]) {
            assert!((m - e).abs() < 1e-9, "{l:?}");
        }
        let j = moments(&closed_form_cdf("jacobi").unwrap(), 4).unwrap();
        for (m, e) in j.iter().zip([1.0, 0.0, 0.5, 0.0, 0.375]) {
            assert!((m - e).abs() < 1e-9, "{j:?}");
        }
    }
}
