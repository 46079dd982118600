//! Laurent coefficients of `S(z) = sum c_n z^-n` at infinity.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::asymptotic::{LimitPair, ScalingLaw};
use crate::error::{Error, Result};
use crate::util;

/// `c_1..c_N`; `c_0 = 0` is implicit and `c_{k+1}` is the k-th moment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTail {
    pub coeffs: Vec<BigRational>,
}

impl SeriesTail {
    /// `c_n` for `n >= 1`.
    pub fn c(&self, n: usize) -> &BigRational {
        &self.coeffs[n - 1]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn moment(&self, k: usize) -> &BigRational {
        self.c(k + 1)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(util::rational_to_f64).collect()
    }
}

/// Coefficients from the recurrence obtained by inserting the series into
/// the ODE for `S`:
///
/// ```text
/// [a2 (n-1) + (s n - s + 1)(a2 + b1)] c_n
///   = [(2s - 1 - s n)(a1 + b0) - a1 (n-2)] c_{n-1} - a0 (n-2) c_{n-2}
///     - sum_{k=0}^{n-3} [(s k + 1) c_{k+1} (a0 c_{n-2-k} + a1 c_{n-1-k})
///                        + a2 (s k + s + 1) c_{k+2} c_{n-1-k}]
/// ```
pub fn series_coeffs(lp: &LimitPair, scaling: &ScalingLaw, n_max: usize) -> Result<SeriesTail> {
    let s = &scaling.sigma;
    let one = BigRational::one();
    let q = |k: usize| BigRational::from_integer(BigInt::from(k));
    let mut c: Vec<BigRational> = alloc::vec![BigRational::zero(), one.clone()];
    let a1b0 = &lp.a1 + &lp.b0;
    let a2b1 = &lp.a2 + &lp.b1;
    for n in 2..=n_max {
        let nn = q(n);
        let bracket = &lp.a2 * (&nn - &one) + (s * &nn - s + &one) * &a2b1;
        if bracket.is_zero() {
            return Err(Error::SeriesObstruction(n));
        }
        let mut rhs = ((s * q(2) - &one - s * &nn) * &a1b0 - &lp.a1 * q(n - 2)) * &c[n - 1]
            - &lp.a0 * q(n - 2) * &c[n - 2];
        for k in 0..n.saturating_sub(2) {
            let kk = q(k);
            let w1 = s * &kk + &one;
            let w2 = s * &kk + s + &one;
            let lin = &lp.a0 * &c[n - 2 - k] + &lp.a1 * &c[n - 1 - k];
            rhs -= w1 * &c[k + 1] * lin + &lp.a2 * w2 * &c[k + 2] * &c[n - 1 - k];
        }
        c.push(rhs / bracket);
    }
    c.truncate(n_max + 1);
    c.remove(0);
    Ok(SeriesTail { coeffs: c })
}

/// `c_1 = 1`, `c_2 = 0`, `c_{n+2} = n c_n + sum_{k=0}^{n-1} c_{k+1} c_{n-k}`.
pub fn reduced_inverse_erf_coeffs(n_max: usize) -> SeriesTail {
    let mut c: Vec<BigRational> = alloc::vec![BigRational::zero(), BigRational::one(), BigRational::zero()];
    while c.len() <= n_max {
        let n = c.len() - 2;
        let mut v = BigRational::from_integer(BigInt::from(n)) * &c[n];
        for k in 0..n {
            v += &c[k + 1] * &c[n - k];
        }
        c.push(v);
    }
    c.truncate(n_max + 1);
    c.remove(0);
    SeriesTail { coeffs: c }
}

fn binom_half(k: usize) -> BigRational {
    // binomial(1/2, k)
    let mut v = BigRational::one();
    let half = util::rat(1, 2);
    for j in 0..k {
        v = v * (&half - util::int(j as i64)) / util::int(j as i64 + 1);
    }
    v
}

fn central_binomial(k: usize) -> BigInt {
    let mut v = BigInt::one();
    for j in 0..k {
        v = v * BigInt::from(2 * k - j) / BigInt::from(j + 1);
    }
    v
}

/// Laurent coefficients read off the closed forms by binomial expansion,
/// independently of the recurrence. The inverse-erf law has no elementary
/// closed form; its reference coefficients come from the reduced recurrence.
pub fn closed_form_series(family: &str, n_max: usize) -> Result<SeriesTail> {
    let mut c = alloc::vec![BigRational::zero(); n_max];
    match family {
        // 1/sqrt(z^2 - 1) = sum binom(2k, k) 4^-k z^-(2k+1)
        "jacobi" => {
            for k in 0..n_max.div_ceil(2) {
                if 2 * k < n_max {
                    c[2 * k] = BigRational::new(central_binomial(k), BigInt::one() << (2 * k));
                }
            }
        }
        // 2 / (z + sqrt(z^2 - 4z)): Catalan numbers
        "laguerre" => {
            for n in 1..=n_max {
                let k = n - 1;
                c[n - 1] = BigRational::new(central_binomial(k), BigInt::from(k + 1));
            }
        }
        // z (1 - sqrt(1 - 2/z^2)) = -sum_{k>=1} binom(1/2, k) (-2)^k z^(1-2k)
        "hermite" => {
            for k in 1..=n_max.div_ceil(2) {
                if 2 * k - 1 <= n_max {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    let pow = BigRational::from_integer(BigInt::from(sign) << k);
                    c[2 * k - 2] = -binom_half(k) * pow;
                }
            }
        }
        // exp(W(1/z)) - 1 = sum (-n)^n / (n+1)! z^-(n+1)
        "bell" => {
            let mut fact = BigInt::one();
            for n in 0..n_max {
                fact *= BigInt::from(n + 1);
                let p = num_traits::pow(BigInt::from(-(n as i64)), n);
                c[n] = BigRational::new(p, fact.clone());
            }
        }
        "inverse_erf" => return Ok(reduced_inverse_erf_coeffs(n_max)),
        other => return Err(Error::UnknownFamily(other.into())),
    }
    Ok(SeriesTail { coeffs: c })
}
