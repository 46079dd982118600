//! The five subcommands. Each builds a [`Document`]; nothing here touches
//! the file system.

use anyhow::{bail, Context};
use num_rational::BigRational;
use num_traits::Zero;
use zerodist_core::asymptotic::{
    closed_form_cdf, closed_form_series, compute_limits, inverted_measure, riccati_solve, series_coeffs,
    suggest_sigma, LimitMeasure, LimitPair, MeasureSource, ScalingLaw,
};
use zerodist_core::family::generate;
use zerodist_core::rootfind::{empirical_cdf, ks_distance, verify_chain, StepMeasure};
use zerodist_core::util::{rational_to_f64, rational_to_sci};
use zerodist_core::{Error, FamilySpec};

use crate::args::{Command, FamilySource, RunConfig};
use crate::output::{Document, Table, Value};

/// Default tail mass left outside the window of an unbounded law.
pub const TAIL_MASS: f64 = 1e-6;

/// Moments used for the far-field expansion of the log potential.
const POTENTIAL_TERMS: usize = 30;

pub fn execute(cfg: &RunConfig) -> anyhow::Result<Document> {
    let mut doc = match cfg.command {
        Command::Gen => cmd_gen(cfg),
        Command::Zeros => cmd_zeros(cfg),
        Command::Limit => cmd_limit(cfg),
        Command::Compare => Ok(compare(cfg)?.to_document(cfg)),
        Command::Series => cmd_series(cfg),
    }?;
    let mut head = common_meta(cfg);
    head.append(&mut doc.meta);
    doc.meta = head;
    Ok(doc)
}

fn common_meta(cfg: &RunConfig) -> Vec<(String, Value)> {
    let fam = cfg.family.spec();
    let mut m = vec![
        ("family".to_string(), Value::from(fam.name.as_str())),
        ("custom".to_string(), Value::from(!cfg.family.is_builtin())),
        ("n".to_string(), Value::from(cfg.n)),
    ];
    for (k, v) in &fam.params {
        m.push((format!("param_{k}"), v.into()));
    }
    m
}

/// `--sigma` if given, else the suggested exponent. The flag is set when
/// several exponents give non-degenerate limits.
pub fn scaling(cfg: &RunConfig) -> anyhow::Result<(ScalingLaw, bool)> {
    match &cfg.sigma {
        Some(s) => Ok((ScalingLaw::new(s.clone())?, false)),
        None => {
            let c = suggest_sigma(cfg.family.spec())?;
            Ok((c.scaling, c.multiple_sigma))
        }
    }
}

fn limit_meta(doc: &mut Document, scaling: &ScalingLaw, multiple: bool, lp: &LimitPair) {
    doc.meta("sigma", &scaling.sigma);
    doc.meta("multiple_sigma", multiple);
    for (k, v) in [("a2", &lp.a2), ("a1", &lp.a1), ("a0", &lp.a0), ("b1", &lp.b1), ("b0", &lp.b0)] {
        doc.meta(k, v);
    }
}

pub fn cmd_gen(cfg: &RunConfig) -> anyhow::Result<Document> {
    let polys = generate(cfg.family.spec(), cfg.n)?;
    let mut doc = Document::default();
    // ragged in CSV: the coefficient list spreads over c0..c_degree
    let mut t = Table::new("polynomials", &["n", "degree", "coefficients"]);
    for (k, p) in polys.iter().enumerate() {
        let coeffs = p.coeffs().iter().map(Value::from).collect();
        t.push(vec![k.into(), p.degree().into(), Value::List(coeffs)]);
    }
    doc.tables.push(t);
    Ok(doc)
}

pub fn cmd_zeros(cfg: &RunConfig) -> anyhow::Result<Document> {
    let (scaling, multiple) = scaling(cfg)?;
    let polys = generate(cfg.family.spec(), cfg.n)?;
    let (report, mut chain) = verify_chain(&polys)?;
    let mut iso = chain.pop().expect("n >= 1");
    let all_real = iso.len() == cfg.n && !iso.repeated_roots;
    iso.refine_all(cfg.precision + 2);
    let n = cfg.n as u64;
    let phi = scaling.phi_rational(n, cfg.precision + 4);
    let phi_f = scaling.phi(n);

    let mut doc = Document::default();
    doc.meta("sigma", &scaling.sigma);
    doc.meta("multiple_sigma", multiple);
    doc.meta("phi", phi_f);
    doc.meta("precision", cfg.precision as usize);
    doc.meta("all_real", all_real);
    doc.meta("interlacing", !report.failures.contains(&cfg.n));
    doc.meta("interlacing_up_to_n", report.interlacing);
    let mut t = Table::new("zeros", &["k", "x", "z", "z_decimal"]);
    for (k, e) in iso.roots.iter().enumerate() {
        let z = e.midpoint() / &phi;
        t.push(vec![
            (k + 1).into(),
            e.value.into(),
            rational_to_f64(&z).into(),
            rational_to_sci(&z, cfg.precision as usize).into(),
        ]);
    }
    doc.tables.push(t);
    Ok(doc)
}

/// Limit law for the configured family: the closed form for a built-in
/// family at its own exponent, otherwise the generic `sigma = 0` solver.
pub fn limit_measure(cfg: &RunConfig, scaling: &ScalingLaw) -> anyhow::Result<LimitMeasure> {
    let fam = cfg.family.spec();
    if let FamilySource::Builtin(_) = cfg.family {
        let own = suggest_sigma(fam)?.scaling;
        if own == *scaling {
            return Ok(closed_form_cdf(&fam.name)?);
        }
    }
    if !scaling.sigma.is_zero() {
        bail!(Error::Unsupported(format!(
            "a limit law for sigma = {} (closed forms exist at each built-in's own sigma, the generic solver needs sigma = 0)",
            scaling.sigma
        )));
    }
    let lp = compute_limits(fam, scaling)?;
    let s = riccati_solve(&lp)?;
    let (lo, hi) = riccati_window(&lp, cfg.window);
    let mu = series_coeffs(&lp, scaling, POTENTIAL_TERMS)?.to_f64();
    Ok(inverted_measure(s, lo, hi, mu, MeasureSource::Riccati))
}

/// The two real zeros of `a` when it has them, else `[-T, T]`.
fn riccati_window(lp: &LimitPair, window: Option<f64>) -> (f64, f64) {
    let [a2, a1, a0, _, _] = lp.to_f64();
    if let Some(t) = window {
        return (-t, t);
    }
    let disc = a1 * a1 - 4.0 * a2 * a0;
    if a2 != 0.0 && disc > 0.0 {
        let sq = disc.sqrt();
        let (r1, r2) = ((-a1 - sq) / (2.0 * a2), (-a1 + sq) / (2.0 * a2));
        return (r1.min(r2), r1.max(r2));
    }
    let r = if a2 != 0.0 {
        (a0 / a2).abs().sqrt().max((a1 / a2).abs())
    } else if a1 != 0.0 {
        (a0 / a1).abs()
    } else {
        0.0
    };
    let t = (4.0 * (1.0 + r)).max(10.0);
    (-t, t)
}

/// Sampling window: the support when bounded, else `[-T, T]` with both
/// tails below [`TAIL_MASS`] unless `--window` fixes `T`.
pub fn window(lm: &LimitMeasure, fixed: Option<f64>) -> anyhow::Result<(f64, f64)> {
    if lm.is_bounded() {
        return Ok((lm.support_lo, lm.support_hi));
    }
    if let Some(t) = fixed {
        return Ok((-t, t));
    }
    let mut t = lm.upper_window(TAIL_MASS)?;
    while lm.cdf(-t)? >= TAIL_MASS {
        t *= 1.1;
    }
    Ok((-t, t))
}

pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { hi } else { lo + (hi - lo) * (i as f64 / last) })
        .collect()
}

/// `(t, cdf, pdf)` rows. A density that cannot be recovered at a window
/// endpoint (a singular edge) is reported as NaN.
pub fn tabulate(lm: &LimitMeasure, grid: &[f64]) -> anyhow::Result<Vec<[f64; 3]>> {
    grid.iter()
        .enumerate()
        .map(|(i, &t)| {
            let pdf = match lm.pdf(t) {
                Err(_) if i == 0 || i + 1 == grid.len() => f64::NAN,
                r => r.with_context(|| format!("density at t = {t}"))?,
            };
            let cdf = lm.cdf(t).with_context(|| format!("cdf at t = {t}"))?;
            Ok([t, cdf, pdf])
        })
        .collect()
}

pub fn cmd_limit(cfg: &RunConfig) -> anyhow::Result<Document> {
    let (scaling, multiple) = scaling(cfg)?;
    let lp = compute_limits(cfg.family.spec(), &scaling)?;
    let lm = limit_measure(cfg, &scaling)?;
    let (lo, hi) = window(&lm, cfg.window)?;
    let rows = tabulate(&lm, &linspace(lo, hi, cfg.grid))?;

    let mut doc = Document::default();
    limit_meta(&mut doc, &scaling, multiple, &lp);
    doc.meta("source", lm.source.to_string());
    doc.meta("support_lo", lm.support_lo);
    doc.meta("support_hi", lm.support_hi);
    doc.meta("window_lo", lo);
    doc.meta("window_hi", hi);
    let mut t = Table::new("law", &["t", "cdf", "pdf"]);
    for [x, c, p] in rows {
        t.push(vec![x.into(), c.into(), p.into()]);
    }
    doc.tables.push(t);
    Ok(doc)
}

pub fn cmd_series(cfg: &RunConfig) -> anyhow::Result<Document> {
    let (scaling, multiple) = scaling(cfg)?;
    let lp = compute_limits(cfg.family.spec(), &scaling)?;
    let c = series_coeffs(&lp, &scaling, cfg.n)?;
    let mut doc = Document::default();
    limit_meta(&mut doc, &scaling, multiple, &lp);
    let mut t = Table::new("series", &["k", "c", "c_float"]);
    for (k, ck) in c.coeffs.iter().enumerate() {
        t.push(vec![(k + 1).into(), ck.into(), rational_to_f64(ck).into()]);
    }
    doc.tables.push(t);
    Ok(doc)
}

/// One scaled zero with the step CDF on both sides of its jump.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfilePoint {
    pub z: f64,
    pub step_left: f64,
    pub step_right: f64,
    pub limit: f64,
    /// `max(|step_left - limit|, |step_right - limit|)`.
    pub deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentRow {
    pub k: u32,
    pub empirical: f64,
    /// `c_{k+1}`.
    pub exact: BigRational,
}

/// Everything `compare` reports.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub scaling: ScalingLaw,
    pub phi: f64,
    pub ks: f64,
    pub ks_at: f64,
    pub all_real: bool,
    /// `(P_{n-1}, P_n)` interlace.
    pub interlacing: bool,
    /// First 20 series coefficients equal the closed-form expansion.
    pub series_match: bool,
    pub step: StepMeasure,
    pub limit: LimitMeasure,
    pub moments: Vec<MomentRow>,
    pub profile: Vec<ProfilePoint>,
    /// `(t, step cdf, limit cdf, limit pdf)`.
    pub curves: Vec<[f64; 4]>,
}

pub const SERIES_CHECK_TERMS: usize = 20;
pub const MOMENT_ORDER: u32 = 8;

fn builtin_only(cfg: &RunConfig) -> anyhow::Result<&FamilySpec> {
    match &cfg.family {
        FamilySource::Builtin(f) => Ok(f),
        FamilySource::Custom(f) => bail!("compare needs a built-in family, got custom family {}", f.name),
    }
}

pub fn compare(cfg: &RunConfig) -> anyhow::Result<Comparison> {
    let fam = builtin_only(cfg)?;
    let (scaling, _) = scaling(cfg)?;
    let own = suggest_sigma(fam)?.scaling;
    if own != scaling {
        bail!("the closed-form law of {} belongs to sigma = {}, not {}", fam.name, own.sigma, scaling.sigma);
    }
    let n = cfg.n;
    let polys = generate(fam, n)?;
    let (report, mut chain) = verify_chain(&polys)?;
    let mut iso = chain.pop().expect("n >= 1");
    iso.refine_all(cfg.precision);
    let all_real = iso.len() == n && !iso.repeated_roots;
    let phi = scaling.phi(n as u64);
    let step = empirical_cdf(&iso.roots, n, phi);
    let limit = closed_form_cdf(&fam.name)?;
    let ks = ks_distance(&step, &limit)?;

    let mut profile = Vec::with_capacity(n);
    let (mut worst, mut ks_at) = (-1.0, f64::NAN);
    for &z in &step.scaled_zeros {
        let (l, r, lim) = (step.cdf_left(z), step.cdf(z), limit.cdf(z)?);
        let deviation = (l - lim).abs().max((r - lim).abs());
        if deviation > worst {
            (worst, ks_at) = (deviation, z);
        }
        profile.push(ProfilePoint { z, step_left: l, step_right: r, limit: lim, deviation });
    }

    let lp = compute_limits(fam, &scaling)?;
    let c = series_coeffs(&lp, &scaling, SERIES_CHECK_TERMS)?;
    let series_match = c.coeffs == closed_form_series(&fam.name, SERIES_CHECK_TERMS)?.coeffs;
    let moments = (0..=MOMENT_ORDER)
        .map(|k| MomentRow { k, empirical: step.moment(k), exact: c.moment(k as usize).clone() })
        .collect();

    let (mut lo, mut hi) = window(&limit, cfg.window)?;
    if let (Some(&a), Some(&b)) = (step.scaled_zeros.first(), step.scaled_zeros.last()) {
        (lo, hi) = (lo.min(a), hi.max(b));
    }
    let curves = tabulate(&limit, &linspace(lo, hi, cfg.grid))?
        .into_iter()
        .map(|[t, c, p]| [t, step.cdf(t), c, p])
        .collect();

    Ok(Comparison {
        scaling,
        phi,
        ks,
        ks_at,
        all_real,
        interlacing: !report.failures.contains(&n),
        series_match,
        step,
        limit,
        moments,
        profile,
        curves,
    })
}

impl Comparison {
    pub fn to_document(&self, cfg: &RunConfig) -> Document {
        let mut doc = Document::default();
        doc.meta("sigma", &self.scaling.sigma);
        doc.meta("phi", self.phi);
        doc.meta("precision", cfg.precision as usize);
        doc.meta("source", self.limit.source.to_string());

        let mut s = Table::new(
            "summary",
            &["ks", "ks_at", "all_real", "interlacing", "series_match", "series_terms"],
        );
        s.push(vec![
            self.ks.into(),
            self.ks_at.into(),
            self.all_real.into(),
            self.interlacing.into(),
            self.series_match.into(),
            SERIES_CHECK_TERMS.into(),
        ]);

        let mut m = Table::new("moments", &["k", "empirical", "limit", "limit_float", "difference"]);
        for r in &self.moments {
            let exact = rational_to_f64(&r.exact);
            m.push(vec![
                (r.k as usize).into(),
                r.empirical.into(),
                (&r.exact).into(),
                exact.into(),
                (r.empirical - exact).into(),
            ]);
        }

        let mut p = Table::new("profile", &["k", "z", "step_left", "step_right", "limit_cdf", "deviation"]);
        for (k, q) in self.profile.iter().enumerate() {
            p.push(vec![
                (k + 1).into(),
                q.z.into(),
                q.step_left.into(),
                q.step_right.into(),
                q.limit.into(),
                q.deviation.into(),
            ]);
        }

        let mut c = Table::new("curves", &["t", "step_cdf", "limit_cdf", "limit_pdf"]);
        for row in &self.curves {
            c.push(row.iter().map(|&x| x.into()).collect());
        }
        doc.tables.extend([s, m, p, c]);
        doc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_both_ends() {
        let g = linspace(-2f64.sqrt(), 2f64.sqrt(), 3);
        assert_eq!(g, vec![-2f64.sqrt(), 0.0, 2f64.sqrt()]);
    }

    #[test]
    fn riccati_window_uses_the_zeros_of_a() {
        let lp = LimitPair::from_i64([1, 0, -1], [1, 0]);
        assert_eq!(riccati_window(&lp, None), (-1.0, 1.0));
        let flat = LimitPair::from_i64([0, 0, -1], [1, 0]);
        assert_eq!(riccati_window(&flat, None), (-10.0, 10.0));
        assert_eq!(riccati_window(&flat, Some(3.0)), (-3.0, 3.0));
    }
}
