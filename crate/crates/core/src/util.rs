//! Small helpers for exact rationals: parsing, conversion and decimal output.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::ParseRational(t.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits: String = whole.chars().filter(|c| *c != '-' && *c != '+').collect();
        if frac.is_empty() && digits.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let mut all = digits;
        all.push_str(frac);
        if all.is_empty() {
            return Err(bad());
        }
        let mut p = BigInt::from_str(&all).map_err(|_| bad())?;
        if negative {
            p = -p;
        }
        let q = num_traits::pow(BigInt::from(10u8), frac.len());
        return Ok(BigRational::new(p, q));
    }
    BigInt::from_str(t).map(BigRational::from_integer).map_err(|_| bad())
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn rational_to_u64(r: &BigRational) -> Option<u64> {
    if r.is_integer() {
        r.to_integer().to_u64()
    } else {
        None
    }
}

/// Exact binary expansion of a finite `f64`.
pub fn f64_to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// Formats `r` in scientific notation with `digits` significant digits,
/// rounding half away from zero. The digits are exact, not routed through f64.
pub fn rational_to_sci(r: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10u8);
    // decimal exponent e with 10^e <= a < 10^(e+1)
    let approx = rational_to_f64(&a);
    let mut e: i64 = if approx.is_finite() && approx > 0.0 {
        num_traits::Float::floor(num_traits::Float::log10(approx)) as i64
    } else {
        (a.numer().bits() as i64 - a.denom().bits() as i64) * 3 / 10
    };
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while a < pow10(e) {
        e -= 1;
    }
    while a >= pow10(e + 1) {
        e += 1;
    }
    let scaled = &a / pow10(e - (digits as i64 - 1));
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let mut m = q;
    if BigInt::from(2u8) * rem >= *scaled.denom() {
        m += 1;
    }
    let mut s = m.to_string();
    if s.len() > digits {
        // rounding carried into a new digit
        s.truncate(digits);
        e += 1;
    }
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&s[..1]);
    if s.len() > 1 {
        out.push('.');
        out.push_str(&s[1..]);
    }
    out.push('e');
    out.push_str(&e.to_string());
    out
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Integer vector scaled by a positive factor so that entries are coprime.
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for c in v.iter_mut() {
            *c /= &g;
        }
    }
    v
}

pub fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn scientific_formatting_is_exact() {
        assert_eq!(rational_to_sci(&rat(1, 3), 5), "3.3333e-1");
        assert_eq!(rational_to_sci(&rat(-2, 3), 3), "-6.67e-1");
        assert_eq!(rational_to_sci(&int(999_999), 3), "1.00e6");
        assert_eq!(rational_to_sci(&int(0), 3), "0");
    }
}
