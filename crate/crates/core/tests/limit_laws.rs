//! Limit laws against each other: closed forms, inversion, quadrature
//! moments, the generic Riccati solver and the ODE for `S`.

use std::f64::consts::{E, PI, SQRT_2};

use num_complex::Complex64;
use zerodist_core::asymptotic::{
    cdf_from_potential, closed_form_cdf, closed_form_s, compute_limits, default_schedule, invert,
    moments, ode_residual, riccati_solve, series_coeffs, suggest_sigma, LimitPair, ScalingLaw,
};
use zerodist_core::family::{builtin, default_params};
use zerodist_core::util::rational_to_f64;
use zerodist_core::BUILTIN_FAMILIES;

fn limits(name: &str) -> (LimitPair, ScalingLaw) {
    let f = builtin(name, &default_params(name)).unwrap();
    let sc = suggest_sigma(&f).unwrap().scaling;
    (compute_limits(&f, &sc).unwrap(), sc)
}

fn off_support(name: &str, count: usize) -> Vec<Complex64> {
    let (lo, hi) = closed_form_cdf(name).map(|m| (m.support_lo, m.support_hi)).unwrap();
    let (c, r) = if lo.is_finite() { (0.5 * (lo + hi), 0.5 * (hi - lo)) } else { (0.0, 3.0) };
    (0..count)
        .map(|k| {
            let th = 0.05 + (2.0 * PI - 0.1) * k as f64 / count as f64;
            let rho = r * (0.3 + 1.7 * ((k * 7) % count) as f64 / count as f64);
            let z = Complex64::new(c, 0.0) + Complex64::from_polar(rho.max(0.2), th);
            // keep clear of the real segment
            if z.im.abs() < 0.05 {
                z + Complex64::new(0.0, 0.1f64.copysign(z.im))
            } else {
                z
            }
        })
        .collect()
}

#[test]
fn inversion_recovers_closed_form_densities() {
    for name in ["jacobi", "laguerre", "hermite"] {
        let m = closed_form_cdf(name).unwrap();
        let s = closed_form_s(name).unwrap();
        let w = m.support_hi - m.support_lo;
        let (a, b) = (m.support_lo + 0.1 * w, m.support_hi - 0.1 * w);
        let grid: Vec<f64> = (0..50).map(|k| a + (b - a) * k as f64 / 49.0).collect();
        for p in invert(&s, &grid, &default_schedule()).unwrap() {
            let exact = m.pdf(p.t).unwrap();
            assert!((p.pdf - exact).abs() <= 1e-5, "{name} t={} {} vs {exact}", p.t, p.pdf);
        }
    }
}

#[test]
fn quadrature_moments_match_series() {
    for name in ["jacobi", "laguerre", "hermite", "bell"] {
        let (lp, sc) = limits(name);
        let c = series_coeffs(&lp, &sc, 9).unwrap();
        let q = moments(&closed_form_cdf(name).unwrap(), 8).unwrap();
        for k in 0..=8 {
            let e = rational_to_f64(c.moment(k));
            assert!((q[k] - e).abs() <= 1e-8, "{name} mu_{k}: {} vs {e}", q[k]);
        }
    }
    let q = moments(&closed_form_cdf("inverse_erf").unwrap(), 8).unwrap();
    for (k, e) in [(0, 1.0), (2, 2.0), (4, 10.0), (6, 74.0), (8, 706.0)] {
        assert!((q[k] - e).abs() <= 1e-6, "inverse_erf mu_{k}: {}", q[k]);
    }
}

#[test]
fn riccati_matches_closed_forms() {
    for name in ["jacobi", "inverse_erf"] {
        let (lp, _) = limits(name);
        let r = riccati_solve(&lp).unwrap();
        let cf = closed_form_s(name).unwrap();
        for z in off_support(name, 20) {
            let (u, v) = (r.evaluate(z).unwrap(), cf.evaluate(z).unwrap());
            assert!((u - v).norm() <= 1e-8, "{name} {z}: {u} vs {v}");
        }
    }
}

#[test]
fn closed_forms_solve_the_ode() {
    for name in BUILTIN_FAMILIES {
        let (lp, sc) = limits(name);
        let s = closed_form_s(name).unwrap();
        for z in off_support(name, 50) {
            let r = ode_residual(&s, &lp, &sc, z, 1e-5).unwrap();
            assert!(r <= 1e-5, "{name} {z}: {r}");
        }
    }
}

#[test]
fn inverse_erf_law_is_symmetric() {
    let m = closed_form_cdf("inverse_erf").unwrap();
    for k in 0..=80 {
        let t = 0.1 * k as f64;
        assert!((m.cdf(t).unwrap() + m.cdf(-t).unwrap() - 1.0).abs() <= 1e-10, "t={t}");
    }
    assert!((m.pdf(0.0).unwrap() - SQRT_2 / PI.powf(1.5)).abs() <= 1e-12);
}

#[test]
fn endpoint_values() {
    let b = closed_form_cdf("bell").unwrap();
    assert_eq!(b.cdf(-E).unwrap(), 0.0);
    assert_eq!(b.cdf(0.0).unwrap(), 1.0);
    let h = closed_form_cdf("hermite").unwrap();
    assert_eq!(h.cdf(0.0).unwrap(), 0.5);
}

#[test]
fn potential_cdf_agrees_with_closed_forms() {
    for name in ["laguerre", "hermite", "bell"] {
        let (lp, sc) = limits(name);
        let mu = series_coeffs(&lp, &sc, 30).unwrap().to_f64();
        let m = closed_form_cdf(name).unwrap();
        let s = closed_form_s(name).unwrap();
        let radius = m.support_lo.abs().max(m.support_hi.abs());
        for k in 1..10 {
            let t = m.support_lo + (m.support_hi - m.support_lo) * k as f64 / 10.0;
            let v = cdf_from_potential(&s, &mu, radius, t).unwrap();
            assert!((v - m.cdf(t).unwrap()).abs() < 1e-8, "{name} t={t}: {v}");
        }
    }
}
