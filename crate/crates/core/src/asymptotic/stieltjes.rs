//! Stieltjes transforms of the limit laws.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::f64::consts::{E, PI};
use core::fmt;

use num_complex::Complex64;

use crate::asymptotic::{LimitPair, ScalingLaw};
use crate::error::{Error, Result};
use crate::quad;
use crate::specfun::{lambert_w0, laplace_tail, principal_sqrt_offcut, Faddeeva};

type ComplexFn = dyn Fn(Complex64) -> Result<Complex64> + Send + Sync;

/// `S(z) = integral dpsi(t) / (z - t)`, analytic off the support.
#[derive(Clone)]
pub struct StieltjesEvaluator {
    f: Arc<ComplexFn>,
    pub support: (f64, f64),
    pub label: String,
}

impl fmt::Debug for StieltjesEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StieltjesEvaluator")
            .field("label", &self.label)
            .field("support", &self.support)
            .finish()
    }
}

impl StieltjesEvaluator {
    pub fn new(
        label: impl Into<String>,
        support: (f64, f64),
        f: impl Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
    ) -> Self {
        StieltjesEvaluator { f: Arc::new(f), support, label: label.into() }
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let v = (self.f)(z)?;
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::EvaluationFailure(format!("{} at {z} is not finite", self.label)))
        }
    }
}

/// Support of each builtin limit law.
pub fn support_of(family: &str) -> Result<(f64, f64)> {
    Ok(match family {
        "jacobi" => (-1.0, 1.0),
        "laguerre" => (0.0, 4.0),
        "hermite" => (-core::f64::consts::SQRT_2, core::f64::consts::SQRT_2),
        "bell" => (-E, 0.0),
        "inverse_erf" => (f64::NEG_INFINITY, f64::INFINITY),
        other => return Err(Error::UnknownFamily(other.into())),
    })
}

/// Flips `z` into the closed upper half-plane; returns whether it was flipped.
pub(crate) fn to_upper(z: Complex64) -> (Complex64, bool) {
    if z.im < 0.0 {
        (z.conj(), true)
    } else {
        // also turns -0 into +0
        (Complex64::new(z.re, z.im.abs()), false)
    }
}

pub(crate) fn unflip(v: Complex64, flipped: bool) -> Complex64 {
    if flipped {
        v.conj()
    } else {
        v
    }
}

/// Closed-form transform of the builtin limit laws. Points on the support
/// take the value from the upper half-plane.
pub fn closed_form_s(family: &str) -> Result<StieltjesEvaluator> {
    let support = support_of(family)?;
    let s = match family {
        "jacobi" => StieltjesEvaluator::new("jacobi", support, |z| {
            Ok(principal_sqrt_offcut(z, -1.0, 1.0).inv())
        }),
        "laguerre" => StieltjesEvaluator::new("laguerre", support, |z| {
            Ok(2.0 / (z + principal_sqrt_offcut(z, 0.0, 4.0)))
        }),
        "hermite" => StieltjesEvaluator::new("hermite", support, |z| {
            let r = core::f64::consts::SQRT_2;
            Ok(2.0 / (z + principal_sqrt_offcut(z, -r, r)))
        }),
        "bell" => StieltjesEvaluator::new("bell", support, bell_s),
        "inverse_erf" => {
            let w = Faddeeva::default();
            StieltjesEvaluator::new("inverse_erf", support, move |z| Ok(inverse_erf_s(&w, z)))
        }
        other => return Err(Error::UnknownFamily(other.into())),
    };
    Ok(s)
}

/// `exp(W(1/z)) - 1`.
fn bell_s(z: Complex64) -> Result<Complex64> {
    let (zu, flipped) = to_upper(z);
    if zu.re == 0.0 && zu.im == 0.0 {
        return Err(Error::EvaluationFailure("bell S at z = 0".into()));
    }
    // for Im z >= 0 the argument 1/z lies in the closed lower half-plane
    let u = zu.inv();
    let w = if u.im == 0.0 {
        lambert_w0(Complex64::new(u.re, 0.0))?.conj()
    } else {
        lambert_w0(u)?
    };
    Ok(unflip(w.exp() - 1.0, flipped))
}

/// `z - i sqrt(2/pi) / w(z / sqrt 2)` with the Faddeeva function `w`.
fn inverse_erf_s(w: &Faddeeva, z: Complex64) -> Complex64 {
    let (zu, flipped) = to_upper(z);
    let zeta = zu / core::f64::consts::SQRT_2;
    let v = if zeta.norm() > Faddeeva::CF_RADIUS {
        // 1/w = -i sqrt(pi) (zeta - K) makes S = sqrt(2) K without cancellation
        laplace_tail(zeta) * core::f64::consts::SQRT_2
    } else {
        zu - Complex64::i() * (2.0 / PI).sqrt() / w.eval(zeta)
    };
    unflip(v, flipped)
}

/// Density weight `rho(v)` of the Bell law in the parametrization
/// `t(v) = -(sin v / v) exp(v cot v)`, `v in (0, pi)`.
pub fn bell_weight(v: f64) -> f64 {
    let (s, c) = v.sin_cos();
    let q = (s - v * c) / v;
    (s * s + q * q) / PI
}

/// `t(v) = -(sin v / v) exp(v cot v)`.
pub fn bell_point(v: f64) -> f64 {
    let (s, c) = v.sin_cos();
    -(s / v) * (v * c / s).exp()
}

/// Integral representation of the Bell transform over `v in (0, pi)`.
pub fn bell_s_integral(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && (-E..=0.0).contains(&z.re) {
        return Err(Error::EvaluationFailure(format!("bell integral at {z} lies on the support")));
    }
    quad::integrate(
        |v: f64| Ok(Complex64::new(bell_weight(v), 0.0) / (z - bell_point(v))),
        0.0,
        PI,
        1e-15,
        1e-13,
    )
}

/// Residual of `(1-s) S - s z S' = (a' S + a S' + b') / (a S + b)` with
/// `S'` from a central difference of step `h`.
pub fn ode_residual(
    s: &StieltjesEvaluator,
    lp: &LimitPair,
    scaling: &ScalingLaw,
    z: Complex64,
    h: f64,
) -> Result<f64> {
    let [a2, a1, a0, b1, b0] = lp.to_f64();
    let sig = scaling.sigma_f64();
    let sv = s.evaluate(z)?;
    let sp = (s.evaluate(z + h)? - s.evaluate(z - h)?) / (2.0 * h);
    let a = a2 * z * z + a1 * z + a0;
    let ap = 2.0 * a2 * z + a1;
    let b = b1 * z + b0;
    let lhs = (1.0 - sig) * sv - sig * z * sp;
    let rhs = (ap * sv + a * sp + b1) / (a * sv + b);
    Ok((lhs - rhs).norm())
}
