//! Scaling exponents and the limit polynomials `a(z)`, `b(z)`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, LimitSide, Result};
use crate::family::{FamilySpec, RationalFnOfN};
use crate::poly::ExactPoly;
use crate::util;

/// `phi(n) = n^sigma`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalingLaw {
    pub sigma: BigRational,
}

impl ScalingLaw {
    pub fn new(sigma: BigRational) -> Result<Self> {
        if sigma.is_negative() {
            return Err(Error::BadParam(alloc::format!("sigma = {sigma} is negative")));
        }
        Ok(ScalingLaw { sigma })
    }

    pub fn sigma_f64(&self) -> f64 {
        util::rational_to_f64(&self.sigma)
    }

    pub fn phi(&self, n: u64) -> f64 {
        num_traits::Float::powf(n as f64, self.sigma_f64())
    }

    /// `n^sigma` as a rational, exact for integer `sigma` and otherwise
    /// truncated with relative error below `10^-digits`.
    pub fn phi_rational(&self, n: u64, digits: u32) -> BigRational {
        let p = self.sigma.numer().to_biguint().expect("sigma >= 0");
        let q = self.sigma.denom().to_u32().expect("sigma denominator fits u32");
        let base = num_traits::pow(BigInt::from(n), p.to_usize().expect("sigma numerator fits usize"));
        if q == 1 {
            return BigRational::from_integer(base);
        }
        let k = digits as usize + 2;
        let ten_k = num_traits::pow(BigInt::from(10u8), k);
        let m = (base * num_traits::pow(ten_k.clone(), q as usize)).nth_root(q);
        BigRational::new(m, ten_k)
    }
}

impl fmt::Display for ScalingLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sigma)
    }
}

/// `a(z) = a2 z^2 + a1 z + a0`, `b(z) = b1 z + b0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitPair {
    pub a2: BigRational,
    pub a1: BigRational,
    pub a0: BigRational,
    pub b1: BigRational,
    pub b0: BigRational,
}

impl LimitPair {
    pub fn from_i64(a: [i64; 3], b: [i64; 2]) -> Self {
        LimitPair {
            a2: util::int(a[0]),
            a1: util::int(a[1]),
            a0: util::int(a[2]),
            b1: util::int(b[0]),
            b0: util::int(b[1]),
        }
    }

    pub fn a(&self) -> ExactPoly {
        ExactPoly::new(alloc::vec![self.a0.clone(), self.a1.clone(), self.a2.clone()])
    }

    pub fn b(&self) -> ExactPoly {
        ExactPoly::new(alloc::vec![self.b0.clone(), self.b1.clone()])
    }

    /// `[a2, a1, a0, b1, b0]` as floats.
    pub fn to_f64(&self) -> [f64; 5] {
        [&self.a2, &self.a1, &self.a0, &self.b1, &self.b0].map(util::rational_to_f64)
    }
}

impl fmt::Display for LimitPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a(z) = {}, b(z) = {}", self.a(), self.b())
    }
}

/// Limit of `n^offset r(n)`: `Ok(None)` when it diverges.
fn scaled_limit(r: &RationalFnOfN, offset: &BigRational) -> Option<BigRational> {
    let Some(balance) = r.degree_balance() else {
        return Some(BigRational::zero());
    };
    let total = BigRational::from_integer(BigInt::from(balance)) + offset;
    if total.is_positive() {
        None
    } else if total.is_zero() {
        Some(r.leading_ratio())
    } else {
        Some(BigRational::zero())
    }
}

fn offsets(sigma: &BigRational) -> ([BigRational; 3], [BigRational; 2]) {
    let one = BigRational::from_integer(BigInt::from(1));
    let a = [0i64, 1, 2].map(|j| &one + sigma * util::int(j - 2));
    let b = [0i64, 1].map(|j| sigma * util::int(j - 1));
    (a, b)
}

/// `a_j = lim n^{1 + sigma (j-2)} alpha_j(n)`, `b_j = lim n^{sigma (j-1)} beta_j(n)`.
pub fn compute_limits(fam: &FamilySpec, scaling: &ScalingLaw) -> Result<LimitPair> {
    let (oa, ob) = offsets(&scaling.sigma);
    let mut a: Vec<BigRational> = Vec::with_capacity(3);
    for j in 0..3 {
        a.push(scaled_limit(&fam.alpha[j], &oa[j]).ok_or(Error::DivergentLimit(j, LimitSide::A))?);
    }
    let mut b: Vec<BigRational> = Vec::with_capacity(2);
    for j in 0..2 {
        b.push(scaled_limit(&fam.beta[j], &ob[j]).ok_or(Error::DivergentLimit(j, LimitSide::B))?);
    }
    if a.iter().all(Zero::is_zero) {
        return Err(Error::BadParam(alloc::format!(
            "a(z) vanishes identically for sigma = {}",
            scaling.sigma
        )));
    }
    Ok(LimitPair {
        a2: a[2].clone(),
        a1: a[1].clone(),
        a0: a[0].clone(),
        b1: b[1].clone(),
        b0: b[0].clone(),
    })
}

/// Result of the automatic choice of `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaChoice {
    pub scaling: ScalingLaw,
    /// More than one `sigma >= 0` gives finite, non-degenerate limits.
    pub multiple_sigma: bool,
}

fn sigma_is_valid(fam: &FamilySpec, sigma: &BigRational) -> bool {
    let (oa, ob) = offsets(sigma);
    let mut a_nonzero = false;
    let mut b_nonzero = false;
    for j in 0..3 {
        match scaled_limit(&fam.alpha[j], &oa[j]) {
            None => return false,
            Some(v) => a_nonzero |= !v.is_zero(),
        }
    }
    for j in 0..2 {
        match scaled_limit(&fam.beta[j], &ob[j]) {
            None => return false,
            Some(v) => b_nonzero |= !v.is_zero(),
        }
    }
    a_nonzero && b_nonzero
}

/// Smallest `sigma >= 0` for which every limit is finite and both `a` and
/// `b` are nonzero.
///
/// Validity can only change where some total degree crosses zero, so the
/// candidates are those crossing points plus `0`; the gaps between them are
/// probed to detect whole intervals of valid exponents.
pub fn suggest_sigma(fam: &FamilySpec) -> Result<SigmaChoice> {
    let mut candidates = alloc::vec![BigRational::zero()];
    for (j, r) in fam.alpha.iter().enumerate() {
        if let (Some(bal), true) = (r.degree_balance(), j != 2) {
            // bal + 1 + sigma (j - 2) = 0
            candidates.push(util::int(bal + 1) / util::int(2 - j as i64));
        }
    }
    if let Some(bal) = fam.beta[0].degree_balance() {
        candidates.push(util::int(bal));
    }
    candidates.retain(|s| !s.is_negative());
    candidates.sort();
    candidates.dedup();

    let mut probes: Vec<BigRational> = candidates
        .windows(2)
        .map(|w| (&w[0] + &w[1]) / util::int(2))
        .collect();
    probes.push(candidates.last().cloned().unwrap_or_default() + util::int(1));

    let valid: Vec<&BigRational> = candidates.iter().filter(|s| sigma_is_valid(fam, s)).collect();
    let valid_gap = probes.iter().find(|s| sigma_is_valid(fam, s));
    let chosen = match (valid.first(), valid_gap) {
        (Some(s), _) => (*s).clone(),
        (None, Some(s)) => s.clone(),
        (None, None) => return Err(Error::NoValidSigma),
    };
    Ok(SigmaChoice {
        scaling: ScalingLaw::new(chosen)?,
        multiple_sigma: valid.len() > 1 || valid_gap.is_some(),
    })
}
