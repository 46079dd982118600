//! Exact Laurent sums with rational exponents, and the reduction of the
//! Abel equation for `S` to the canonical form `w (w' - 1) = R(x)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use core::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::asymptotic::{LimitPair, ScalingLaw};
use crate::error::{Error, Result};
use crate::util;

/// Finite sum `sum c_p z^p` with rational exponents `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<BigRational, BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: BigRational, p: BigRational) -> Self {
        let mut l = Self::zero();
        l.push(p, c);
        l
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, BigRational::zero())
    }

    pub fn from_poly(coeffs: &[BigRational]) -> Self {
        let mut l = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            l.push(util::int(i as i64), c.clone());
        }
        l
    }

    fn push(&mut self, p: BigRational, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&p).unwrap_or_else(BigRational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(p, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(c, p)` when the sum is a single term.
    pub fn as_monomial(&self) -> Option<(&BigRational, &BigRational)> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((p, c)), None) => Some((c, p)),
            _ => None,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &o.terms {
            out.push(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            out.push(p.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            for (q, d) in &o.terms {
                out.push(p + q, c * d);
            }
        }
        out
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            out.push(p - BigRational::one(), c * p);
        }
        out
    }

    /// Term-by-term antiderivative with zero constant; a `z^-1` term has
    /// no antiderivative in this class.
    pub fn integral(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            let q = p + BigRational::one();
            if q.is_zero() {
                return Err(Error::NonMonomialObstruction(format!(
                    "antiderivative of {c} z^-1 is logarithmic"
                )));
            }
            out.push(q.clone(), c / q);
        }
        Ok(out)
    }

    /// Division by a single-term sum.
    pub fn div(&self, d: &Self, what: &str) -> Result<Self> {
        let (c, p) = d
            .as_monomial()
            .ok_or_else(|| Error::NonMonomialObstruction(format!("{what} = {d} is not a monomial")))?;
        let mut out = Self::zero();
        for (q, e) in &self.terms {
            out.push(q - p, e / c);
        }
        Ok(out)
    }

    /// Principal-branch evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(p, c)| {
                let pf = util::rational_to_f64(p);
                let zp = if p.is_integer() { z.powi(pf as i32) } else { z.powf(pf) };
                zp * util::rational_to_f64(c)
            })
            .sum()
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.terms.iter().rev() {
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let a = c.abs();
            let pow: String = if p.is_zero() {
                String::new()
            } else if p.is_one() {
                "z".into()
            } else {
                format!("z^({p})")
            };
            match (a.is_one(), pow.is_empty()) {
                (_, true) => write!(f, "{sep}{a}")?,
                (true, false) => write!(f, "{sep}{pow}")?,
                (false, false) => write!(f, "{sep}{a}*{pow}")?,
            }
        }
        Ok(())
    }
}

/// The pieces of the canonical reduction, all exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelCanonicalData {
    pub g: Laurent,
    pub f0: Laurent,
    pub f1: Laurent,
    pub f2: Laurent,
    /// `E(z) = z^e_exponent` with `e_exponent = 1 - 1/sigma`.
    pub e_exponent: BigRational,
    pub big_f0: Laurent,
    pub big_f1: Laurent,
    /// `R` as a function of `z`, i.e. `F0 / F1`.
    pub r_of_z: Laurent,
    pub x_of_z: Laurent,
    /// `kappa` with `R(x) = kappa x`, when the reduction is linear.
    pub r_as_linear: Option<BigRational>,
}

/// Builds `g, f0, f1, f2` of `(S + g) S' = f2 S^2 + f1 S + f0`, then
/// `F0 = (f0 - f1 g + f2 g^2) E^2`, `F1 = (f1 - 2 f2 g + g') E`,
/// `x = int F1`, `R = F0 / F1`.
pub fn abel_canonical(lp: &LimitPair, scaling: &ScalingLaw) -> Result<AbelCanonicalData> {
    let s = &scaling.sigma;
    if !s.is_positive() {
        return Err(Error::Unsupported("sigma > 0 for the Abel reduction".into()));
    }
    let one = BigRational::one();
    let a = Laurent::from_poly(&[lp.a0.clone(), lp.a1.clone(), lp.a2.clone()]);
    let b = Laurent::from_poly(&[lp.b0.clone(), lp.b1.clone()]);
    let z = Laurent::monomial(one.clone(), one.clone());
    let sz = z.scale(s);
    let sza = sz.mul(&a);

    let g = a.add(&sz.mul(&b)).div(&sza, "sigma z a(z)")?;
    let f0 = b.derivative().scale(&-one.clone()).div(&sza, "sigma z a(z)")?;
    let f1 = b.scale(&(&one - s)).sub(&a.derivative()).div(&sza, "sigma z a(z)")?;
    let f2 = Laurent::monomial((&one - s) / s, -one.clone());

    let e_exponent = &one - s.recip();
    let e = Laurent::monomial(one.clone(), e_exponent.clone());
    let e2 = e.mul(&e);

    let big_f0 = f0.sub(&f1.mul(&g)).add(&f2.mul(&g).mul(&g)).mul(&e2);
    let two = util::int(2);
    let big_f1 = f1.sub(&f2.mul(&g).scale(&two)).add(&g.derivative()).mul(&e);

    let x_of_z = big_f1.integral()?;
    let r_of_z = big_f0.div(&big_f1, "F1")?;
    let r_as_linear = match (r_of_z.as_monomial(), x_of_z.as_monomial()) {
        (Some((r, q)), Some((k, m))) if q == m => Some(r / k),
        _ if r_of_z.is_zero() => Some(BigRational::zero()),
        _ => None,
    };
    Ok(AbelCanonicalData {
        g,
        f0,
        f1,
        f2,
        e_exponent,
        big_f0,
        big_f1,
        r_of_z,
        x_of_z,
        r_as_linear,
    })
}
