//! Adaptive Gauss–Kronrod and tanh-sinh quadrature for real and complex integrands.

use alloc::collections::BinaryHeap;
use alloc::format;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: a real vector space with a norm.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<T: QuadValue>(f: &mut impl FnMut(f64) -> Result<T>, a: f64, b: f64) -> Result<Segment<T>> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x)? + f(c + x)?;
        k = k + s * WGK[j];
        if j % 2 == 1 {
            g = g + s * WG[j / 2];
        }
    }
    let value = k * h;
    let error = ((k - g) * h).magnitude();
    Ok(Segment { a, b, value, error })
}

/// Adaptive G7–K15 on `[a, b]` until the summed error estimate is below
/// `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<T: QuadValue>(
    mut f: impl FnMut(f64) -> Result<T>,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let mut heap = BinaryHeap::new();
    heap.push(kronrod15(&mut f, a, b)?);
    for _ in 0..2000 {
        let total: T = heap.iter().fold(T::zero(), |acc, s| acc + s.value);
        let err: f64 = heap.iter().map(|s| s.error).sum();
        if !err.is_finite() || !total.magnitude().is_finite() {
            return Err(Error::QuadratureFailure(format!("non-finite integrand on [{a}, {b}]")));
        }
        if err <= abs_tol.max(rel_tol * total.magnitude()) {
            return Ok(total);
        }
        let worst = heap.pop().expect("nonempty heap");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            return Err(Error::QuadratureFailure(format!("interval collapsed near {m}")));
        }
        heap.push(kronrod15(&mut f, worst.a, m)?);
        heap.push(kronrod15(&mut f, m, worst.b)?);
    }
    Err(Error::QuadratureFailure(format!("subdivision budget exhausted on [{a}, {b}]")))
}

/// Tanh-sinh rule on `[a, b]` for integrands with endpoint singularities.
///
/// `f(x, da, db)` receives the node and its distances to both endpoints,
/// computed without cancellation.
pub fn tanh_sinh<T: QuadValue>(
    mut f: impl FnMut(f64, f64, f64) -> Result<T>,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<T> {
    use core::f64::consts::FRAC_PI_2;
    let half = 0.5 * (b - a);
    let tmax = 4.5;
    let mut eval = |t: f64| -> Result<T> {
        let s = FRAC_PI_2 * t.sinh();
        // 1 - tanh(s) and 1 + tanh(s) without cancellation
        let e = (-2.0 * s.abs()).exp();
        let small = 2.0 * e / (1.0 + e);
        let (dm, dp) = if s >= 0.0 { (small, 2.0 - small) } else { (2.0 - small, small) };
        let da = half * dp;
        let db = half * dm;
        let x = if da <= db { a + da } else { b - db };
        if da <= 0.0 || db <= 0.0 {
            return Ok(T::zero());
        }
        let w = FRAC_PI_2 * t.cosh() / s.cosh().powi(2);
        Ok(f(x, da, db)? * (w * half))
    };
    let mut h = 0.5;
    let mut sum = eval(0.0)?;
    let mut k = 1;
    while k as f64 * h <= tmax {
        sum = sum + eval(k as f64 * h)? + eval(-(k as f64) * h)?;
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..10 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= tmax {
            sum = sum + eval(k as f64 * h)? + eval(-(k as f64) * h)?;
            k += 2;
        }
        let next = sum * h;
        let diff = (next - estimate).magnitude();
        estimate = next;
        if diff <= rel_tol * estimate.magnitude() {
            return Ok(estimate);
        }
    }
    Err(Error::QuadratureFailure(format!("tanh-sinh did not settle on [{a}, {b}]")))
}
