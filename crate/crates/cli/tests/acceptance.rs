//! Acceptance criteria 1-11, one pass/fail line each.

use std::f64::consts::{E, PI, SQRT_2};
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use tempfile::TempDir;
use zerodist::commands::compare;
use zerodist::{Cli, Format, RunConfig};
use zerodist_core::asymptotic::{
    abel_canonical, bell_s_integral, closed_form_cdf, closed_form_s, compute_limits, default_schedule, invert,
    moments, ode_residual, reduced_inverse_erf_coeffs, riccati_solve, series_coeffs, suggest_sigma, LimitPair,
    ScalingLaw,
};
use zerodist_core::family::{builtin, default_params, generate};
use zerodist_core::rootfind::{empirical_cdf, ks_distance, verify_chain};
use zerodist_core::specfun::lambert_w0;
use zerodist_core::util::{rat, rational_to_f64};
use zerodist_core::{FamilySpec, BUILTIN_FAMILIES};

type Check = fn() -> anyhow::Result<(bool, String)>;

fn fam(name: &str) -> FamilySpec {
    builtin(name, &default_params(name)).unwrap()
}

fn limits(name: &str) -> (LimitPair, ScalingLaw) {
    let f = fam(name);
    let sc = suggest_sigma(&f).unwrap().scaling;
    (compute_limits(&f, &sc).unwrap(), sc)
}

/// Points around the support, none closer than 0.05 to the real axis.
fn off_support(name: &str, count: usize) -> Vec<Complex64> {
    let m = closed_form_cdf(name).unwrap();
    let (c, r) = if m.is_bounded() {
        (0.5 * (m.support_lo + m.support_hi), 0.5 * (m.support_hi - m.support_lo))
    } else {
        (0.0, 3.0)
    };
    (0..count)
        .map(|k| {
            let th = 0.05 + (2.0 * PI - 0.1) * k as f64 / count as f64;
            let rho = r * (0.3 + 1.7 * ((k * 7) % count) as f64 / count as f64);
            let z = Complex64::new(c, 0.0) + Complex64::from_polar(rho.max(0.2), th);
            if z.im.abs() < 0.05 {
                z + Complex64::new(0.0, 0.1f64.copysign(z.im))
            } else {
                z
            }
        })
        .collect()
}

fn interlacing() -> anyhow::Result<(bool, String)> {
    let start = Instant::now();
    let mut ok = true;
    let mut fallbacks = 0;
    for name in BUILTIN_FAMILIES {
        let (report, _) = verify_chain(&generate(&fam(name), 60)?)?;
        ok &= report.all_real && report.interlacing;
        fallbacks += report.sturm_fallbacks;
    }
    let t = start.elapsed();
    Ok((
        ok && t < Duration::from_secs(300),
        format!("5 families, all real and interlacing to n = 60: {ok}, Sturm fallbacks {fallbacks}, {:.1} s", t.as_secs_f64()),
    ))
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn series_oracles() -> anyhow::Result<(bool, String)> {
    const N: usize = 20;
    let r = |p: BigInt, q: BigInt| BigRational::new(p, q);
    let catalan = |k: u64| r(binomial(2 * k, k), BigInt::from(k + 1));
    let odd_only = |n: u64, f: &dyn Fn(u64) -> BigRational| if n % 2 == 1 { f(n) } else { BigRational::zero() };
    let oracle = |name: &str, n: u64| -> BigRational {
        match name {
            "laguerre" => catalan(n - 1),
            "hermite" => odd_only(n, &|n| {
                let k = n.div_ceil(2);
                catalan(k - 1) / r(BigInt::from(2).pow((k - 1) as u32), BigInt::one())
            }),
            "jacobi" => odd_only(n, &|n| {
                let k = (n - 1) / 2;
                r(binomial(2 * k, k), BigInt::from(4).pow(k as u32))
            }),
            "bell" => {
                let m = n - 1;
                let num = if m == 0 { BigInt::one() } else { BigInt::from(-(m as i64)).pow(m as u32) };
                r(num, (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k)))
            }
            _ => reduced_inverse_erf_coeffs(N).coeffs[n as usize - 1].clone(),
        }
    };
    let mut bad = Vec::new();
    for name in BUILTIN_FAMILIES {
        let (lp, sc) = limits(name);
        let c = series_coeffs(&lp, &sc, N)?;
        if (1..=N as u64).any(|n| c.coeffs[n as usize - 1] != oracle(name, n)) {
            bad.push(name);
        }
    }
    Ok((bad.is_empty(), format!("c_1..c_20 exact for 5 families; mismatches: {bad:?}")))
}

fn abel_constants() -> anyhow::Result<(bool, String)> {
    let mut got = Vec::new();
    let mut ok = true;
    for (name, kappa) in [("laguerre", rat(-2, 9)), ("hermite", rat(-2, 9)), ("bell", rat(-1, 4))] {
        let (lp, sc) = limits(name);
        let k = abel_canonical(&lp, &sc)?.r_as_linear;
        ok &= k.as_ref() == Some(&kappa);
        got.push(format!("{name} R(x) = {}x", k.map_or("?".into(), |k| k.to_string())));
    }
    Ok((ok, got.join(", ")))
}

fn inversion() -> anyhow::Result<(bool, String)> {
    let mut worst = 0.0f64;
    for name in ["jacobi", "laguerre", "hermite"] {
        let m = closed_form_cdf(name)?;
        let w = m.support_hi - m.support_lo;
        let (a, b) = (m.support_lo + 0.1 * w, m.support_hi - 0.1 * w);
        let grid: Vec<f64> = (0..50).map(|k| a + (b - a) * k as f64 / 49.0).collect();
        for p in invert(&closed_form_s(name)?, &grid, &default_schedule())? {
            worst = worst.max((p.pdf - m.pdf(p.t)?).abs());
        }
    }
    Ok((worst <= 1e-5, format!("max |inverted - closed-form pdf| = {worst:.2e} over 3 x 50 points (tol 1e-5)")))
}

fn moment_identity() -> anyhow::Result<(bool, String)> {
    let mut worst = 0.0f64;
    for name in ["jacobi", "laguerre", "hermite", "bell"] {
        let (lp, sc) = limits(name);
        let c = series_coeffs(&lp, &sc, 9)?;
        let q = moments(&closed_form_cdf(name)?, 8)?;
        for (k, qk) in q.iter().enumerate() {
            worst = worst.max((qk - rational_to_f64(c.moment(k))).abs());
        }
    }
    let q = moments(&closed_form_cdf("inverse_erf")?, 8)?;
    let c = reduced_inverse_erf_coeffs(9);
    let erf_worst = (0..=8).step_by(2).map(|k| (q[k] - rational_to_f64(c.moment(k))).abs()).fold(0.0, f64::max);
    Ok((
        worst <= 1e-8 && erf_worst <= 1e-6,
        format!("bounded laws max error {worst:.2e} (tol 1e-8), inverse_erf even moments {erf_worst:.2e} (tol 1e-6)"),
    ))
}

fn config(args: &[&str], dir: &TempDir, file: &str) -> anyhow::Result<RunConfig> {
    let out = dir.path().join(file);
    let mut full = vec!["zerodist"];
    full.extend(args);
    full.extend(["--out", out.to_str().unwrap()]);
    RunConfig::from_cli(Cli::try_parse_from(full)?)
}

fn bell_comparison() -> anyhow::Result<(bool, String)> {
    let dir = TempDir::new()?;
    let start = Instant::now();
    let cfg = config(&["compare", "--family", "bell", "--n", "75", "--grid", "401"], &dir, "bell75.csv")?;
    let cmp = compare(&cfg)?;
    let doc = cmp.to_document(&cfg);
    doc.write(&cfg.out, Format::Csv)?;
    let t = start.elapsed();
    let curves = doc.table("curves").map_or(0, |c| c.rows.len());
    let steps = doc.table("profile").map_or(0, |c| c.rows.len());
    let ok = cmp.ks <= 0.05 && curves == 401 && steps == 75 && t < Duration::from_secs(120);
    Ok((ok, format!("KS(psi_75, psi) = {:.6} (tol 0.05), {steps} jumps, {curves} curve points, {:.1} s", cmp.ks, t.as_secs_f64())))
}

fn inverse_erf_comparison() -> anyhow::Result<(bool, String)> {
    let dir = TempDir::new()?;
    let cfg = config(&["compare", "--family", "inverse_erf", "--n", "100", "--grid", "401"], &dir, "erf100.json")?;
    let cmp = compare(&cfg)?;
    cmp.to_document(&cfg).write(&cfg.out, Format::Json)?;
    let mut sym = 0.0f64;
    for row in &cmp.curves {
        let t = row[0];
        sym = sym.max((cmp.limit.cdf(t)? + cmp.limit.cdf(-t)? - 1.0).abs());
    }
    let pdf0 = (cmp.limit.pdf(0.0)? - SQRT_2 / PI.powf(1.5)).abs();
    Ok((
        cmp.ks <= 0.05 && sym <= 1e-10 && pdf0 <= 1e-12,
        format!("KS(psi_100, psi) = {:.6} (tol 0.05), symmetry {sym:.1e} (tol 1e-10), pdf(0) error {pdf0:.1e} (tol 1e-12)", cmp.ks),
    ))
}

fn convergence() -> anyhow::Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["hermite", "laguerre", "bell"] {
        let f = fam(name);
        let sc = suggest_sigma(&f)?.scaling;
        let lim = closed_form_cdf(name)?;
        let (_, mut chain) = verify_chain(&generate(&f, 100)?)?;
        let mut ks = Vec::new();
        for n in [5usize, 20, 100] {
            let iso = &mut chain[n - 1];
            iso.refine_all(20);
            ks.push(ks_distance(&empirical_cdf(&iso.roots, n, sc.phi(n as u64)), &lim)?);
        }
        ok &= ks[2] < ks[1] && ks[1] < ks[0];
        parts.push(format!("{name} {:.4} > {:.4} > {:.4}", ks[0], ks[1], ks[2]));
    }
    Ok((ok, format!("KS at n = 5, 20, 100: {}", parts.join("; "))))
}

fn riccati() -> anyhow::Result<(bool, String)> {
    let mut worst = 0.0f64;
    for name in ["jacobi", "inverse_erf"] {
        let (lp, _) = limits(name);
        let r = riccati_solve(&lp)?;
        let cf = closed_form_s(name)?;
        for z in off_support(name, 20) {
            worst = worst.max((r.evaluate(z)? - cf.evaluate(z)?).norm());
        }
    }
    Ok((worst <= 1e-8, format!("max |S_riccati - S_closed| = {worst:.2e} over 2 x 20 points (tol 1e-8)")))
}

fn special_functions() -> anyhow::Result<(bool, String)> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let mut residual = 0.0f64;
    for i in 0..=40 {
        for j in 0..=40 {
            let z = c(-10.0 + 0.5 * i as f64, -10.0 + 0.5 * j as f64);
            let w = lambert_w0(z)?;
            residual = residual.max((w * w.exp() - z).norm());
        }
    }
    let specials = [(c(-1.0 / E, 0.0), c(-1.0, 0.0)), (c(E, 0.0), c(1.0, 0.0)), (c(0.0, 0.0), c(0.0, 0.0))];
    let mut special = 0.0f64;
    for (z, w) in specials {
        special = special.max((lambert_w0(z)? - w).norm());
    }
    let bell = closed_form_s("bell")?;
    let mut integral = 0.0f64;
    for k in 0..10 {
        let z = Complex64::from_polar(1.0 + 0.6 * k as f64, 0.3 + 0.6 * k as f64);
        integral = integral.max((bell_s_integral(z)? - bell.evaluate(z)?).norm());
    }
    Ok((
        residual <= 1e-12 && special <= 1e-12 && integral <= 1e-9,
        format!(
            "|W e^W - z| <= {residual:.1e} on 41 x 41 grid, special values {special:.1e}, Bell integral vs Lambert {integral:.1e}"
        ),
    ))
}

fn ode() -> anyhow::Result<(bool, String)> {
    let mut worst = 0.0f64;
    for name in BUILTIN_FAMILIES {
        let (lp, sc) = limits(name);
        let s = closed_form_s(name)?;
        for z in off_support(name, 50) {
            worst = worst.max(ode_residual(&s, &lp, &sc, z, 1e-5)?);
        }
    }
    Ok((worst <= 1e-5, format!("max residual {worst:.2e} over 5 x 50 points (tol 1e-5)")))
}

fn main() -> ExitCode {
    let checks: [(u32, &str, Check); 11] = [
        (1, "interlacing", interlacing),
        (2, "series oracles", series_oracles),
        (3, "canonical-form constants", abel_constants),
        (4, "closed-form laws by inversion", inversion),
        (5, "moment identity", moment_identity),
        (6, "Bell comparison, n = 75", bell_comparison),
        (7, "inverse-erf comparison, n = 100", inverse_erf_comparison),
        (8, "convergence in n", convergence),
        (9, "generic Riccati solver", riccati),
        (10, "special functions", special_functions),
        (11, "ODE residual", ode),
    ];
    let mut failed = 0;
    for (id, name, check) in checks {
        let start = Instant::now();
        let (ok, detail) = match panic::catch_unwind(check) {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e:#}")),
            Err(_) => (false, "panicked".into()),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {id:>2} {} {name}: {detail} [{:.1} s]",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of 11 passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
