//! Integer polynomials used for exact sign evaluation and Sturm chains.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::ExactPoly;
use crate::util::{self, sign_of};

/// Primitive integer polynomial, a positive multiple of some rational polynomial.
/// Carries an f64 image of its coefficients for the filtered sign test.
#[derive(Clone, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
    approx: Option<Vec<f64>>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let coeffs = util::primitive(coeffs);
        let approx: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        let approx = approx.iter().all(|c| c.is_finite() && c.abs() < 1e300).then_some(approx);
        IntPoly { coeffs, approx }
    }

    pub fn from_exact(p: &ExactPoly) -> Self {
        Self::new(p.to_primitive_integers())
    }

    pub fn to_exact(&self) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_sign(&self) -> i8 {
        self.coeffs.last().map_or(0, sign_of)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Sign at `-inf` (`neg = true`) or `+inf`.
    pub fn sign_at_infinity(&self, neg: bool) -> i8 {
        let s = self.leading_sign();
        if neg && self.degree() % 2 == 1 {
            -s
        } else {
            s
        }
    }

    /// Exact sign of the polynomial at a rational point.
    pub fn sign_at(&self, x: &BigRational) -> i8 {
        if self.coeffs.is_empty() {
            return 0;
        }
        if let Some(s) = self.filtered_sign(x) {
            return s;
        }
        self.exact_sign(x)
    }

    /// Horner in f64 with a forward error bound; `None` when the bound
    /// does not separate the value from zero.
    fn filtered_sign(&self, x: &BigRational) -> Option<i8> {
        let a = self.approx.as_ref()?;
        let xf = util::rational_to_f64(x);
        if !xf.is_finite() || (xf != 0.0 && xf.abs() < 1e-100) || xf.abs() > 1e100 {
            return None;
        }
        // for |x| > 1 evaluate the reversed polynomial at 1/x to avoid overflow
        let flip = xf.abs() > 1.0;
        let y = if flip { 1.0 / xf } else { xf };
        let ay = y.abs();
        let mut v = 0.0f64;
        let mut s = 0.0f64;
        let mut step = |c: &f64| {
            v = v * y + c;
            s = s * ay + c.abs();
        };
        if flip {
            a.iter().for_each(&mut step);
        } else {
            a.iter().rev().for_each(&mut step);
        }
        if !v.is_finite() || !s.is_finite() || s < 1e-250 {
            return None;
        }
        let d = a.len() as f64;
        // covers rounding of the coefficients, of x, and of the Horner steps
        let bound = (6.0 * d + 10.0) * f64::EPSILON * s * 1.01;
        if v.abs() > bound {
            let mut sign = if v > 0.0 { 1 } else { -1 };
            // p(x) = x^d rev(1/x)
            if flip && xf < 0.0 && (a.len() - 1) % 2 == 1 {
                sign = -sign;
            }
            Some(sign)
        } else if s == 0.0 {
            Some(0)
        } else {
            None
        }
    }

    fn exact_sign(&self, x: &BigRational) -> i8 {
        // homogeneous Horner: sum a_i p^i q^(d-i), same sign as p(x) since q > 0
        let p = x.numer();
        let q = x.denom();
        let mut coeffs = self.coeffs.iter().rev();
        let mut acc = coeffs.next().cloned().unwrap_or_default();
        let mut qpow = q.clone();
        for c in coeffs {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        sign_of(&acc)
    }

    /// Exact value at a rational point (up to the positive normalization).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Power of two strictly exceeding the modulus of every root (Cauchy bound).
    pub fn root_bound(&self) -> BigRational {
        let lead = match self.coeffs.last() {
            Some(l) => l.abs(),
            None => return BigRational::one(),
        };
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default();
        let (q, r) = max.div_rem(&lead);
        let mut bound = q + if r.is_zero() { 0 } else { 1 } + 1u32;
        let mut pow = BigInt::one();
        while pow <= bound {
            pow <<= 1;
        }
        bound = pow;
        BigRational::from_integer(bound)
    }

    /// Sign-corrected pseudo-remainder: a positive multiple of `rem(self, d)`.
    pub fn signed_prem(&self, d: &IntPoly) -> IntPoly {
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lc = d.coeffs.last().expect("nonzero divisor").clone();
        if r.len() <= dd {
            return self.clone();
        }
        let steps = r.len() - dd;
        for k in (0..steps).rev() {
            let top = r[k + dd].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &top * dc;
            }
            r.truncate(k + dd);
        }
        // r = lc^steps * self mod d; undo a negative multiplier
        if lc.is_negative() && steps % 2 == 1 {
            for c in r.iter_mut() {
                *c = -c.clone();
            }
        }
        IntPoly::new(r)
    }

    /// Exact quotient by `x - r`; the caller guarantees divisibility.
    pub fn deflate(&self, r: &BigRational) -> IntPoly {
        let (q, rem) = self.to_exact().div_rem(&ExactPoly::new(alloc::vec![-r.clone(), BigRational::one()]));
        debug_assert!(rem.is_zero());
        IntPoly::from_exact(&q)
    }
}

/// Sturm sequence `p, p', -rem(...), ...` with positive rescaling only.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = alloc::vec![p.clone()];
        if p.degree() == 0 {
            return SturmChain { chain };
        }
        chain.push(p.derivative());
        loop {
            let n = chain.len();
            let r = chain[n - 2].signed_prem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            let neg = IntPoly::new(r.coeffs.iter().map(|c| -c).collect());
            let stop = neg.degree() == 0;
            chain.push(neg);
            if stop {
                break;
            }
        }
        SturmChain { chain }
    }

    fn count_changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut changes = 0;
        for s in signs.filter(|s| *s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::count_changes(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, neg: bool) -> usize {
        Self::count_changes(self.chain.iter().map(|p| p.sign_at_infinity(neg)))
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct real roots on the whole line.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(true)
            .saturating_sub(self.variations_at_infinity(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{int, rat};

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn filtered_and_exact_signs_agree() {
        let p = ip(&[-2, 0, 1]);
        for (x, s) in [(rat(3, 2), 1), (rat(7, 5), -1), (int(0), -1), (int(-2), 1)] {
            assert_eq!(p.sign_at(&x), s);
            assert_eq!(p.exact_sign(&x), s);
        }
        // exact root hits the fallback
        let q = ip(&[-1, 2]);
        assert_eq!(q.sign_at(&rat(1, 2)), 0);
    }

    #[test]
    fn sturm_counts() {
        // x^3 + 3x^2 + x has three real roots
        let p = ip(&[0, 1, 3, 1]);
        let s = SturmChain::new(&p);
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_in(&int(-1), &int(1)), 2);
        // x^2 + 1 has none
        assert_eq!(SturmChain::new(&ip(&[1, 0, 1])).count_real(), 0);
    }

    #[test]
    fn cauchy_bound_encloses_roots() {
        let p = ip(&[-100, 0, 1]);
        assert!(p.root_bound() > int(10));
    }
}
