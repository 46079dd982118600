//! Certified real-root isolation, refinement and interlacing checks.
//!
//! Every decision is made from exact signs of integer polynomials at
//! rational points. A floating-point filter with a rigorous error bound
//! short-circuits the exact evaluation whenever it can.

mod intpoly;
mod measure;

pub use intpoly::{IntPoly, SturmChain};
pub use measure::{empirical_cdf, ks_distance, StepMeasure};

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::ExactPoly;
use crate::util;

/// Isolating interval for one real root.
///
/// Either `lo == hi` is the root itself, or the root lies strictly
/// inside `(lo, hi)` and the polynomial is nonzero at both endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct RootEnclosure {
    pub lo: BigRational,
    pub hi: BigRational,
    pub value: f64,
    pub width: BigRational,
}

impl RootEnclosure {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        let width = &hi - &lo;
        RootEnclosure { value: util::rational_to_f64(&mid), lo, hi, width }
    }

    pub fn exact(r: BigRational) -> Self {
        Self::new(r.clone(), r)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn width_f64(&self) -> f64 {
        util::rational_to_f64(&self.width)
    }

    /// One bisection step against `p`; `s_lo` is the sign of `p` at `lo`.
    fn bisect(&mut self, p: &IntPoly, s_lo: i8) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        let s = p.sign_at(&mid);
        *self = if s == 0 {
            Self::exact(mid)
        } else if s == s_lo {
            Self::new(mid, self.hi.clone())
        } else {
            Self::new(self.lo.clone(), mid)
        };
    }

    /// Bisects until the width is at most `tol`.
    fn refine_with(&mut self, p: &IntPoly, tol: &BigRational) {
        if self.is_exact() {
            return;
        }
        let s_lo = p.sign_at(&self.lo);
        if s_lo == 0 {
            *self = Self::exact(self.lo.clone());
            return;
        }
        if p.sign_at(&self.hi) == 0 {
            *self = Self::exact(self.hi.clone());
            return;
        }
        while !self.is_exact() && &self.width > tol {
            self.bisect(p, s_lo);
        }
    }
}

/// Roots of one polynomial together with the square-free integer
/// polynomial that certifies them.
#[derive(Clone, Debug)]
pub struct IsolatedRoots {
    pub poly: IntPoly,
    pub roots: Vec<RootEnclosure>,
    /// Set when the input had repeated factors.
    pub repeated_roots: bool,
    /// Set when the incremental bracketing had to fall back to Sturm bisection.
    pub used_sturm_fallback: bool,
}

impl IsolatedRoots {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Refines every root until `width <= 10^-digits * max(1, |x|)`.
    pub fn refine_all(&mut self, digits: u32) {
        let ten = BigRational::from_integer(BigInt::from(10));
        let base = BigRational::one() / num_traits::pow(ten, digits as usize);
        for e in self.roots.iter_mut() {
            let scale = e.lo.abs().max(e.hi.abs()).max(BigRational::one());
            e.refine_with(&self.poly, &(&base * scale));
            // second pass against the smaller endpoint modulus
            let scale = e.lo.abs().min(e.hi.abs()).max(BigRational::one());
            e.refine_with(&self.poly, &(&base * scale));
        }
    }

    /// Floating midpoints in ascending order.
    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|e| e.value).collect()
    }

    fn bisect_root(&mut self, i: usize) {
        let s_lo = self.poly.sign_at(&self.roots[i].lo);
        self.roots[i].bisect(&self.poly, s_lo);
    }
}

/// One enclosure per distinct real root, sorted ascending.
pub fn isolate_roots(p: &ExactPoly) -> Vec<RootEnclosure> {
    isolate(p).roots
}

/// Full Sturm isolation of the square-free part of `p`.
pub fn isolate(p: &ExactPoly) -> IsolatedRoots {
    let sf = p.square_free();
    let repeated = sf.degree() < p.degree();
    let poly = IntPoly::from_exact(&sf);
    let roots = sturm_isolate(&poly);
    IsolatedRoots { poly, roots, repeated_roots: repeated, used_sturm_fallback: false }
}

/// Power of two strictly larger than every root modulus (Fujiwara bound).
pub fn root_bound(p: &IntPoly) -> BigRational {
    let c = p.coeffs();
    let d = p.degree();
    if d == 0 {
        return BigRational::one();
    }
    let lead_bits = c[d].bits() as i64;
    let mut e_max: i64 = 0;
    for k in 1..=d {
        let a = &c[d - k];
        if a.is_zero() {
            continue;
        }
        // |a / lead| < 2^(bits(a) - bits(lead) + 1)
        let num = a.bits() as i64 - lead_bits + 1;
        let e = num.div_euclid(k as i64) + i64::from(num.rem_euclid(k as i64) != 0);
        e_max = e_max.max(e);
    }
    let e = (e_max + 2) as u32;
    BigRational::from_integer(BigInt::one() << e)
}

fn sturm_isolate(p: &IntPoly) -> Vec<RootEnclosure> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let chain = SturmChain::new(p);
    let b = root_bound(p);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut stack = alloc::vec![(-b.clone(), b.clone(), chain.variations_at(&-b.clone()), chain.variations_at(&b))];
    while let Some((a, c, va, vc)) = stack.pop() {
        let count = va.saturating_sub(vc);
        if count == 0 {
            continue;
        }
        if count == 1 {
            let sc = p.sign_at(&c);
            if sc == 0 {
                out.push(RootEnclosure::exact(c));
                continue;
            }
            if p.sign_at(&a) != 0 {
                out.push(RootEnclosure::new(a, c));
                continue;
            }
        }
        let m = (&a + &c) / &two;
        let vm = chain.variations_at(&m);
        stack.push((a, m.clone(), va, vm));
        stack.push((m, c, vm, vc));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Isolates the roots of `p` using the roots of its predecessor as separators.
///
/// When the zeros interlace, each gap between consecutive enclosures of
/// `prev` (plus two outer brackets) holds exactly one sign change of `p`,
/// and counting them certifies that all roots are real and simple. The
/// enclosures of `prev` may be refined along the way. Falls back to full
/// Sturm isolation when the bracketing does not account for every root.
pub fn isolate_after(prev: &mut IsolatedRoots, p: &ExactPoly) -> IsolatedRoots {
    if let Some(found) = try_bracket(prev, p) {
        return found;
    }
    let mut iso = isolate(p);
    iso.used_sturm_fallback = true;
    iso
}

fn try_bracket(prev: &mut IsolatedRoots, p: &ExactPoly) -> Option<IsolatedRoots> {
    let full = IntPoly::from_exact(p);
    if full.is_zero() {
        return None;
    }
    for round in 0..BRACKET_ROUNDS {
        // exact roots shared with the predecessor are split off first;
        // refinement can make more of them exact, so this is redone per round
        let mut shared = Vec::new();
        let mut q = full.clone();
        for e in prev.roots.iter().filter(|e| e.is_exact()) {
            if q.sign_at(&e.lo) == 0 {
                q = q.deflate(&e.lo);
                if q.sign_at(&e.lo) == 0 {
                    return None;
                }
                shared.push(e.lo.clone());
            }
        }
        let d = q.degree();
        let bound = root_bound(&q);
        match bracket_round(prev, &q, &bound, round >= BRACKET_ROUNDS / 2) {
            Bracket::Done(mut roots) => {
                if roots.len() != d {
                    return None;
                }
                roots.extend(shared.into_iter().map(RootEnclosure::exact));
                roots.sort_by(|a, b| a.lo.cmp(&b.lo));
                return Some(IsolatedRoots {
                    poly: full,
                    roots,
                    repeated_roots: false,
                    used_sturm_fallback: false,
                });
            }
            Bracket::Refine(idx) => {
                for i in idx {
                    for _ in 0..4 {
                        prev.bisect_root(i);
                    }
                }
            }
            Bracket::Miscount => {
                for i in 0..prev.len() {
                    for _ in 0..4 {
                        prev.bisect_root(i);
                    }
                }
            }
        }
    }
    None
}

const BRACKET_ROUNDS: usize = 64;

enum Bracket {
    Done(Vec<RootEnclosure>),
    Refine(Vec<usize>),
    Miscount,
}

fn bracket_round(prev: &IsolatedRoots, q: &IntPoly, bound: &BigRational, wide: bool) -> Bracket {
    let d = q.degree();
    if d == 0 {
        return Bracket::Done(Vec::new());
    }
    // separator points with their signs
    let mut pts: Vec<(BigRational, i8)> = Vec::with_capacity(2 * prev.len() + 2);
    let mut unclear = Vec::new();
    for (i, e) in prev.roots.iter().enumerate() {
        let sl = q.sign_at(&e.lo);
        if e.is_exact() {
            if sl == 0 {
                return Bracket::Miscount;
            }
            // the point closes one gap and opens the next
            pts.push((e.lo.clone(), sl));
            pts.push((e.lo.clone(), sl));
            continue;
        }
        let sh = q.sign_at(&e.hi);
        if sl == 0 || sh == 0 || sl != sh {
            unclear.push(i);
            continue;
        }
        pts.push((e.lo.clone(), sl));
        pts.push((e.hi.clone(), sh));
    }
    if !unclear.is_empty() {
        return Bracket::Refine(unclear);
    }
    let left = outer_point(q, pts.first(), bound, true, wide);
    let right = outer_point(q, pts.last(), bound, false, wide);
    pts.insert(0, left);
    pts.push(right);

    let mut roots = Vec::new();
    // gaps are (pts[0], pts[1]), (pts[2], pts[3]), ...
    for pair in pts.chunks(2) {
        let (a, sa) = &pair[0];
        let (b, sb) = &pair[1];
        if sa != sb {
            roots.push(RootEnclosure::new(a.clone(), b.clone()));
        }
    }
    if roots.len() == d {
        Bracket::Done(roots)
    } else {
        Bracket::Miscount
    }
}

/// Outer bracket end beyond the extreme separator, found by doubling the
/// distance until a sign change appears or the root bound is passed.
fn outer_point(
    q: &IntPoly,
    inner: Option<&(BigRational, i8)>,
    bound: &BigRational,
    left: bool,
    wide: bool,
) -> (BigRational, i8) {
    let limit = if left { -bound.clone() } else { bound.clone() };
    let at_limit = || (limit.clone(), q.sign_at_infinity(left));
    let (x0, s0) = match inner {
        Some(v) if !wide => v.clone(),
        _ => return at_limit(),
    };
    let mut step = x0.abs().max(BigRational::one());
    loop {
        let x = if left { &x0 - &step } else { &x0 + &step };
        if (left && x <= limit) || (!left && x >= limit) {
            return at_limit();
        }
        let s = q.sign_at(&x);
        if s != 0 && s != s0 {
            return (x, s);
        }
        step *= BigRational::from_integer(BigInt::from(2));
    }
}

/// Refines a copy of `e` until its width is at most `tol`.
pub fn refine(e: &RootEnclosure, p: &ExactPoly, tol: f64) -> RootEnclosure {
    let poly = IntPoly::from_exact(p);
    let tol = util::f64_to_rational(tol).unwrap_or_else(BigRational::zero);
    let mut out = e.clone();
    out.refine_with(&poly, &tol);
    out
}

const COMPARE_BUDGET: usize = 400;

/// Decides `root(a[i]) <= root(b[j])`, refining on demand.
fn root_le(a: &mut IsolatedRoots, i: usize, b: &mut IsolatedRoots, j: usize) -> Result<bool> {
    for _ in 0..COMPARE_BUDGET {
        let (x, y) = (&a.roots[i], &b.roots[j]);
        if x.hi <= y.lo {
            return Ok(true);
        }
        if x.lo > y.hi || (x.lo == y.hi && !(x.is_exact() && y.is_exact())) {
            return Ok(false);
        }
        match (x.is_exact(), y.is_exact()) {
            (true, true) => return Ok(x.lo <= y.lo),
            (true, false) => {
                let r = x.lo.clone();
                split_at(b, j, &r);
            }
            (false, true) => {
                let r = y.lo.clone();
                split_at(a, i, &r);
            }
            (false, false) => {
                if x.width >= y.width {
                    a.bisect_root(i);
                } else {
                    b.bisect_root(j);
                }
            }
        }
    }
    Err(Error::InsufficientSeparation)
}

/// Cuts enclosure `i` at the rational point `r` (which lies inside it).
fn split_at(set: &mut IsolatedRoots, i: usize, r: &BigRational) {
    let e = &set.roots[i];
    if r <= &e.lo || r >= &e.hi {
        set.bisect_root(i);
        return;
    }
    let sr = set.poly.sign_at(r);
    let sl = set.poly.sign_at(&e.lo);
    set.roots[i] = if sr == 0 {
        RootEnclosure::exact(r.clone())
    } else if sr == sl {
        RootEnclosure::new(r.clone(), e.hi.clone())
    } else {
        RootEnclosure::new(e.lo.clone(), r.clone())
    };
}

/// `x_k <= y_k <= x_{k+1}` for all k, where `y` are the roots of the lower-degree
/// polynomial and `x` those of the next one.
pub fn check_interlacing(roots_lo: &mut IsolatedRoots, roots_hi: &mut IsolatedRoots) -> Result<bool> {
    if roots_hi.len() != roots_lo.len() + 1 {
        return Err(Error::BadParam(alloc::format!(
            "interlacing needs {} + 1 roots, got {}",
            roots_lo.len(),
            roots_hi.len()
        )));
    }
    for k in 0..roots_lo.len() {
        if !root_le(roots_hi, k, roots_lo, k)? || !root_le(roots_lo, k, roots_hi, k + 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of checking a whole chain `P_1, ..., P_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterlacingReport {
    pub n_max: usize,
    /// Every `P_n` has `deg P_n` distinct real roots.
    pub all_real: bool,
    /// Every consecutive pair interlaces.
    pub interlacing: bool,
    /// Every `n` for which `(P_{n-1}, P_n)` fails.
    pub failures: Vec<usize>,
    pub sturm_fallbacks: usize,
}

/// Isolates the real roots of `polys[1..]` incrementally and checks every
/// consecutive pair for interlacing. `polys[k]` is `P_k`.
pub fn verify_chain(polys: &[ExactPoly]) -> Result<(InterlacingReport, Vec<IsolatedRoots>)> {
    let mut report = InterlacingReport {
        n_max: polys.len().saturating_sub(1),
        all_real: true,
        interlacing: true,
        failures: Vec::new(),
        sturm_fallbacks: 0,
    };
    let mut chain: Vec<IsolatedRoots> = Vec::with_capacity(polys.len());
    for (k, p) in polys.iter().enumerate().skip(1) {
        let mut iso = match chain.last_mut() {
            Some(prev) if prev.len() == prev.poly.degree() => isolate_after(prev, p),
            _ => isolate(p),
        };
        report.sturm_fallbacks += usize::from(iso.used_sturm_fallback);
        let real = iso.len() == p.degree() && !iso.repeated_roots;
        report.all_real &= real;
        let ok = real
            && match chain.last_mut() {
                Some(prev) if prev.len() + 1 == iso.len() => check_interlacing(prev, &mut iso)?,
                Some(_) => false,
                None => true,
            };
        if !ok {
            report.interlacing = false;
            report.failures.push(k);
        }
        chain.push(iso);
    }
    Ok((report, chain))
}
