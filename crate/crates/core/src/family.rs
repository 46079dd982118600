//! Polynomial families defined by `P_{n+1} = A_n P_n' + B_n P_n`, `P_0 = 1`,
//! with `deg A_n <= 2`, `deg B_n <= 1` and coefficients rational in `n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::util::{self, int};

/// A rational function of the index `n`, stored as `num(n) / den(n)`.
///
/// Both polynomials have integer coefficients with no common integer
/// content, and the denominator's leading coefficient is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFnOfN {
    num: ExactPoly,
    den: ExactPoly,
}

impl RationalFnOfN {
    pub fn new(num: ExactPoly, den: ExactPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::BadParam("zero denominator polynomial".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let scale = util::common_denominator(num.coeffs().iter().chain(den.coeffs()));
        let to_int = |p: &ExactPoly| -> Vec<BigInt> {
            p.coeffs()
                .iter()
                .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
                .collect()
        };
        let mut n_int = to_int(&num);
        let mut d_int = to_int(&den);
        let mut g = n_int.iter().chain(d_int.iter()).fold(BigInt::zero(), |g, c| g.gcd(c));
        if d_int.last().is_some_and(Signed::is_negative) {
            g = -g;
        }
        for c in n_int.iter_mut().chain(d_int.iter_mut()) {
            *c /= &g;
        }
        let lift = |v: Vec<BigInt>| ExactPoly::new(v.into_iter().map(BigRational::from_integer).collect());
        Ok(RationalFnOfN {
            num: lift(n_int),
            den: lift(d_int),
        })
    }

    pub fn zero() -> Self {
        RationalFnOfN {
            num: ExactPoly::zero(),
            den: ExactPoly::one(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(ExactPoly::constant(c), ExactPoly::one()).expect("nonzero denominator")
    }

    /// `num(n) / den(n)` from coefficient lists in ascending powers of `n`.
    pub fn from_coeffs(num: Vec<BigRational>, den: Vec<BigRational>) -> Result<Self> {
        Self::new(ExactPoly::new(num), ExactPoly::new(den))
    }

    pub fn numerator(&self) -> &ExactPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ExactPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, n: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(n);
        if d.is_zero() {
            return Err(Error::denominator_zero(n));
        }
        Ok(self.num.eval(n) / d)
    }

    /// `deg num - deg den`, or `None` for the zero function.
    pub fn degree_balance(&self) -> Option<i64> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.num.degree() as i64 - self.den.degree() as i64)
        }
    }

    /// Ratio of leading coefficients, i.e. the limit of `n^{-balance} r(n)`.
    pub fn leading_ratio(&self) -> BigRational {
        match (self.num.leading(), self.den.leading()) {
            (Some(a), Some(b)) => a / b,
            _ => BigRational::zero(),
        }
    }

    /// Nonnegative integer roots of the denominator that are `>= from`.
    /// `None` when the constant term is too large to enumerate divisors.
    fn denominator_integer_roots(&self, from: u64) -> Option<Vec<u64>> {
        let mut coeffs: Vec<BigInt> = self.den.to_primitive_integers();
        let mut roots = Vec::new();
        if coeffs.first().is_some_and(Zero::is_zero) {
            if from == 0 {
                roots.push(0);
            }
            while coeffs.first().is_some_and(Zero::is_zero) {
                coeffs.remove(0);
            }
        }
        if coeffs.len() <= 1 {
            return Some(roots);
        }
        let c0 = coeffs[0].abs().to_u64().filter(|c| *c <= 1_000_000_000_000)?;
        let eval = |r: u64| {
            let x = BigInt::from(r);
            coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
        };
        let mut d = 1u64;
        while d * d <= c0 {
            if c0 % d == 0 {
                for r in [d, c0 / d] {
                    if r >= from && !roots.contains(&r) && eval(r).is_zero() {
                        roots.push(r);
                    }
                }
            }
            d += 1;
        }
        roots.sort_unstable();
        Some(roots)
    }
}

/// Definition of a polynomial sequence by its recurrence coefficients:
/// `A_n(x) = alpha[2](n) x^2 + alpha[1](n) x + alpha[0](n)` and
/// `B_n(x) = beta[1](n) x + beta[0](n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub alpha: [RationalFnOfN; 3],
    pub beta: [RationalFnOfN; 2],
    pub params: BTreeMap<String, BigRational>,
    pub start_index: u64,
}

impl FamilySpec {
    /// Validates that no coefficient denominator vanishes at an integer `n >= start_index`.
    pub fn new(
        name: impl Into<String>,
        alpha: [RationalFnOfN; 3],
        beta: [RationalFnOfN; 2],
        params: BTreeMap<String, BigRational>,
        start_index: u64,
    ) -> Result<Self> {
        for r in alpha.iter().chain(beta.iter()) {
            if let Some(roots) = r.denominator_integer_roots(start_index) {
                if let Some(&n) = roots.first() {
                    return Err(Error::DenominatorZeroAtN(n));
                }
            }
        }
        Ok(FamilySpec {
            name: name.into(),
            alpha,
            beta,
            params,
            start_index,
        })
    }

    pub fn a_at(&self, n: u64) -> Result<ExactPoly> {
        let n = BigRational::from_integer(BigInt::from(n));
        Ok(ExactPoly::new(vec![
            self.alpha[0].eval(&n)?,
            self.alpha[1].eval(&n)?,
            self.alpha[2].eval(&n)?,
        ]))
    }

    pub fn b_at(&self, n: u64) -> Result<ExactPoly> {
        let n = BigRational::from_integer(BigInt::from(n));
        Ok(ExactPoly::new(vec![self.beta[0].eval(&n)?, self.beta[1].eval(&n)?]))
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_FAMILIES: [&str; 5] = ["jacobi", "laguerre", "hermite", "bell", "inverse_erf"];

/// One step of the recurrence: `A_n p' + B_n p`.
pub fn next_poly(p: &ExactPoly, n: u64, fam: &FamilySpec) -> Result<ExactPoly> {
    if n < fam.start_index {
        return Err(Error::BadParam(format!(
            "n = {n} precedes the start index {}",
            fam.start_index
        )));
    }
    let a = fam.a_at(n)?;
    let b = fam.b_at(n)?;
    Ok(a.mul(&p.derivative()).add(&b.mul(p)))
}

/// `[P_0, ..., P_count]` with `P_0 = 1`.
pub fn generate(fam: &FamilySpec, count: usize) -> Result<Vec<ExactPoly>> {
    let mut out = Vec::with_capacity(count + 1);
    out.push(ExactPoly::one());
    for k in 0..count {
        let next = next_poly(&out[k], fam.start_index + k as u64, fam)?;
        out.push(next);
    }
    Ok(out)
}

fn const_fn(c: BigRational) -> RationalFnOfN {
    RationalFnOfN::constant(c)
}

/// `c0 + c1 n` over `d0 + d1 n`.
fn linear_over_linear(c: [BigRational; 2], d: [BigRational; 2]) -> Result<RationalFnOfN> {
    RationalFnOfN::from_coeffs(c.to_vec(), d.to_vec())
}

fn take_param(
    params: &BTreeMap<String, BigRational>,
    key: &str,
    family: &str,
) -> Result<BigRational> {
    let v = params
        .get(key)
        .cloned()
        .ok_or_else(|| Error::BadParam(format!("{family} requires parameter `{key}`")))?;
    if v <= int(-1) {
        return Err(Error::BadParam(format!("{family}: {key} must exceed -1, got {v}")));
    }
    Ok(v)
}

fn reject_unknown(params: &BTreeMap<String, BigRational>, allowed: &[&str], family: &str) -> Result<()> {
    match params.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::BadParam(format!("{family} does not take parameter `{k}`"))),
        None => Ok(()),
    }
}

/// The recurrence data of one of the five built-in families.
///
/// * `jacobi` (`alpha`, `beta` > -1): monic Jacobi polynomials,
///   `A_n = (x^2-1)/(2n+s+1)`, `B_n = (n+s+1)/(2n+s+1) (x + (alpha-beta)/(2n+s+2))`, `s = alpha+beta`.
/// * `laguerre` (`alpha` > -1): monic Laguerre, `A_n = -x`, `B_n = x - n - alpha - 1`.
/// * `hermite`: physicists' Hermite (leading coefficient `2^n`), `A_n = -1`, `B_n = 2x`.
/// * `bell`: Bell (Touchard) polynomials, `A_n = B_n = x`.
/// * `inverse_erf`: the real-zero family `Q_n` tied to derivatives of the
///   inverse error function, `A_n = -1/(n+1)`, `B_n = x`.
pub fn builtin(name: &str, params: &BTreeMap<String, BigRational>) -> Result<FamilySpec> {
    let zero = RationalFnOfN::zero;
    let one = BigRational::one;
    match name {
        "jacobi" => {
            reject_unknown(params, &["alpha", "beta"], name)?;
            let a = take_param(params, "alpha", name)?;
            let b = take_param(params, "beta", name)?;
            let s = &a + &b;
            let d1 = [&s + one(), int(2)];
            let a2 = linear_over_linear([one(), BigRational::zero()], d1.clone())?;
            let a0 = linear_over_linear([-one(), BigRational::zero()], d1.clone())?;
            let b1 = linear_over_linear([&s + one(), one()], d1.clone())?;
            // (n+s+1)(alpha-beta) / ((2n+s+1)(2n+s+2))
            let diff = &a - &b;
            let num = ExactPoly::new(vec![(&s + one()) * &diff, diff.clone()]);
            let den = ExactPoly::new(d1.to_vec()).mul(&ExactPoly::new(vec![&s + int(2), int(2)]));
            let b0 = RationalFnOfN::new(num, den)?;
            FamilySpec::new(name, [a0, zero(), a2], [b0, b1], params.clone(), 0)
        }
        "laguerre" => {
            reject_unknown(params, &["alpha"], name)?;
            let a = take_param(params, "alpha", name)?;
            let b0 = RationalFnOfN::from_coeffs(vec![-(a + one()), -one()], vec![one()])?;
            FamilySpec::new(
                name,
                [zero(), const_fn(-one()), zero()],
                [b0, const_fn(one())],
                params.clone(),
                0,
            )
        }
        "hermite" => {
            reject_unknown(params, &[], name)?;
            FamilySpec::new(
                name,
                [const_fn(-one()), zero(), zero()],
                [zero(), const_fn(int(2))],
                params.clone(),
                0,
            )
        }
        "bell" => {
            reject_unknown(params, &[], name)?;
            FamilySpec::new(
                name,
                [zero(), const_fn(one()), zero()],
                [zero(), const_fn(one())],
                params.clone(),
                0,
            )
        }
        "inverse_erf" => {
            reject_unknown(params, &[], name)?;
            let a0 = linear_over_linear([-one(), BigRational::zero()], [one(), one()])?;
            FamilySpec::new(
                name,
                [a0, zero(), zero()],
                [zero(), const_fn(one())],
                params.clone(),
                0,
            )
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

/// Parameters used when a caller does not supply any (`alpha = beta = 0`).
pub fn default_params(name: &str) -> BTreeMap<String, BigRational> {
    let mut m = BTreeMap::new();
    match name {
        "jacobi" => {
            m.insert("alpha".into(), BigRational::zero());
            m.insert("beta".into(), BigRational::zero());
        }
        "laguerre" => {
            m.insert("alpha".into(), BigRational::zero());
        }
        _ => {}
    }
    m
}
