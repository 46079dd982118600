//! Exact root isolation on the built-in families.

use num_rational::BigRational;
use num_traits::Signed;
use zerodist_core::asymptotic::{closed_form_cdf, suggest_sigma};
use zerodist_core::family::{builtin, default_params, generate};
use zerodist_core::rootfind::{empirical_cdf, isolate, ks_distance, verify_chain};
use zerodist_core::util::{parse_rational, rational_to_f64};
use zerodist_core::{FamilySpec, BUILTIN_FAMILIES};

fn fam(name: &str) -> FamilySpec {
    builtin(name, &default_params(name)).unwrap()
}

#[test]
fn chains_interlace_to_twenty() {
    for name in BUILTIN_FAMILIES {
        let polys = generate(&fam(name), 20).unwrap();
        let (report, chain) = verify_chain(&polys).unwrap();
        assert!(report.all_real && report.interlacing, "{name}: {report:?}");
        assert_eq!(chain.len(), 20);
        assert!(chain.iter().enumerate().all(|(i, iso)| iso.len() == i + 1));
    }
}

#[test]
fn hermite_zeros_to_thirty_digits() {
    let p = &generate(&fam("hermite"), 6).unwrap()[6];
    let mut iso = isolate(p);
    iso.refine_all(30);
    let reference = [
        "0.436077411927616508679215948251",
        "1.33584907401369694971489528297",
        "2.35060497367449222283392198706",
    ];
    for (k, r) in reference.iter().enumerate() {
        let r: BigRational = parse_rational(r).unwrap();
        let e = &iso.roots[3 + k];
        let tol = parse_rational("0.0000000000000000000000000001").unwrap();
        assert!((e.midpoint() - &r).abs() <= tol, "root {k}: {}", e.value);
        // symmetric partner
        assert!((e.midpoint() + iso.roots[2 - k].midpoint()).abs() <= tol);
    }
}

#[test]
fn bell_has_an_exact_zero_at_the_origin() {
    let p = &generate(&fam("bell"), 4).unwrap()[4];
    let mut iso = isolate(p);
    iso.refine_all(16);
    assert_eq!(iso.len(), 4);
    assert!(iso.roots[3].is_exact());
    let expect = [-4.490863615361032, -1.343_379_568_952_89, -0.165756815686078, 0.0];
    for (e, x) in iso.roots.iter().zip(expect) {
        assert!((e.value - x).abs() < 1e-12);
    }
}

#[test]
fn ks_shrinks_with_n() {
    for name in BUILTIN_FAMILIES {
        let f = fam(name);
        let sc = suggest_sigma(&f).unwrap().scaling;
        let lim = closed_form_cdf(name).unwrap();
        let polys = generate(&f, 30).unwrap();
        let (_, chain) = verify_chain(&polys).unwrap();
        let ks = |n: usize| {
            let emp = empirical_cdf(&chain[n - 1].roots, n, sc.phi(n as u64));
            ks_distance(&emp, &lim).unwrap()
        };
        let (a, b) = (ks(5), ks(30));
        assert!(b < a, "{name}: {a} then {b}");
    }
}

#[test]
fn jacobi_parameters_keep_zeros_inside() {
    let mut params = default_params("jacobi");
    params.insert("alpha".into(), parse_rational("-1/2").unwrap());
    params.insert("beta".into(), parse_rational("3/2").unwrap());
    let polys = generate(&builtin("jacobi", &params).unwrap(), 12).unwrap();
    let (report, mut chain) = verify_chain(&polys).unwrap();
    assert!(report.interlacing);
    for iso in chain.iter_mut() {
        iso.refine_all(16);
        assert!(iso.roots.iter().all(|e| rational_to_f64(&e.lo) > -1.0 && rational_to_f64(&e.hi) < 1.0));
    }
}
