//! Exact and reference values computed independently of the library.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use zerodist_core::asymptotic::{
    abel_canonical, closed_form_s, compute_limits, reduced_inverse_erf_coeffs, series_coeffs, suggest_sigma,
    bell_s_integral,
};
use zerodist_core::family::{builtin, default_params};
use zerodist_core::specfun::lambert_w0;
use zerodist_core::util::{int, rat};
use zerodist_core::FamilySpec;

fn fam(name: &str) -> FamilySpec {
    builtin(name, &default_params(name)).unwrap()
}

fn coeffs(name: &str, n: usize) -> Vec<BigRational> {
    let f = fam(name);
    let sc = suggest_sigma(&f).unwrap().scaling;
    series_coeffs(&compute_limits(&f, &sc).unwrap(), &sc, n).unwrap().coeffs
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn catalan(k: u64) -> BigRational {
    BigRational::new(binomial(2 * k, k), BigInt::from(k + 1))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

#[test]
fn laguerre_series_is_catalan() {
    let c = coeffs("laguerre", 20);
    let expect: Vec<_> = (0..20).map(catalan).collect();
    assert_eq!(c, expect);
}

#[test]
fn hermite_series_expands_the_semicircle_transform() {
    // z (1 - sqrt(1 - 2/z^2)): c_{2k-1} = Catalan(k-1) / 2^(k-1), even terms vanish
    let c = coeffs("hermite", 20);
    for (i, ci) in c.iter().enumerate() {
        let n = i as u64 + 1;
        let expect = if n % 2 == 1 {
            let k = n.div_ceil(2);
            catalan(k - 1) / BigRational::from_integer(BigInt::from(2).pow((k - 1) as u32))
        } else {
            BigRational::zero()
        };
        assert_eq!(*ci, expect, "c_{n}");
    }
    assert_eq!(&c[..5], &[int(1), int(0), rat(1, 2), int(0), rat(1, 2)]);
}

#[test]
fn jacobi_series_expands_the_arcsine_transform() {
    // 1/sqrt(z^2 - 1): c_{2k+1} = binom(2k, k) / 4^k
    let c = coeffs("jacobi", 20);
    for (i, ci) in c.iter().enumerate() {
        let n = i as u64 + 1;
        let expect = if n % 2 == 1 {
            let k = (n - 1) / 2;
            BigRational::new(binomial(2 * k, k), BigInt::from(4).pow(k as u32))
        } else {
            BigRational::zero()
        };
        assert_eq!(*ci, expect, "c_{n}");
    }
    assert_eq!(c[4], rat(3, 8));
}

#[test]
fn bell_series_is_the_lambert_expansion() {
    let c = coeffs("bell", 20);
    for (i, ci) in c.iter().enumerate() {
        let n = i as u64;
        let num = if n == 0 { BigInt::one() } else { BigInt::from(-(n as i64)).pow(n as u32) };
        assert_eq!(*ci, BigRational::new(num, factorial(n + 1)), "c_{}", n + 1);
    }
}

#[test]
fn inverse_erf_series() {
    let c = coeffs("inverse_erf", 20);
    assert_eq!(c, reduced_inverse_erf_coeffs(20).coeffs);
    // even moments 1, 2, 10, 74, 706 by hand from the recurrence
    let even: Vec<_> = [0usize, 2, 4, 6, 8].iter().map(|&k| c[k].clone()).collect();
    assert_eq!(even, [1, 2, 10, 74, 706].map(int).to_vec());
    assert!(c.iter().skip(1).step_by(2).all(Zero::is_zero));
}

#[test]
fn abel_constants() {
    for (name, kappa) in [("laguerre", rat(-2, 9)), ("hermite", rat(-2, 9)), ("bell", rat(-1, 4))] {
        let f = fam(name);
        let sc = suggest_sigma(&f).unwrap().scaling;
        let d = abel_canonical(&compute_limits(&f, &sc).unwrap(), &sc).unwrap();
        assert_eq!(d.r_as_linear, Some(kappa), "{name}");
    }
}

#[test]
fn lambert_reference_values() {
    // 30-digit references from an arbitrary-precision library
    let cases = [
        ((1.0, 1.0), (0.656_966_069_230_436_4, 0.325_450_339_413_415_06)),
        ((-2.0, 0.0), (0.172_816_002_839_999_98, 1.673_686_413_740_842_7)),
        ((-0.3, 0.0), (-0.489_402_227_180_214_9, 0.0)),
        ((10.0, 0.0), (1.745_528_002_740_699_4, 0.0)),
        ((-1.0, 0.0), (-0.318_131_505_204_764_13, 1.337_235_701_430_689_5)),
        ((0.0, 5.0), (1.198_048_797_651_656_5, 0.917_330_723_549_567_2)),
        ((-5.0, -2.0), (0.997_719_338_871_971_8, -1.716_747_550_580_591_4)),
        ((1e-3, 0.0), (0.000_999_001_497_338_530_8, 0.0)),
        ((100.0, 0.0), (3.385_630_140_290_05, 0.0)),
    ];
    for ((x, y), (u, v)) in cases {
        let w = lambert_w0(Complex64::new(x, y)).unwrap();
        assert!((w - Complex64::new(u, v)).norm() < 1e-14 * (1.0 + w.norm()), "W({x}+{y}i) = {w}");
    }
}

#[test]
fn bell_transform_at_ten() {
    // e^{W(1/10)} - 1 with W(1/10) the fixed point of w = exp(-w) / 10
    let mut w = 0.0f64;
    for _ in 0..200 {
        w = 0.1 * (-w).exp();
    }
    let expect = w.exp() - 1.0;
    assert!((expect - 0.0955719187668).abs() < 1e-12);
    let z = Complex64::new(10.0, 0.0);
    let s = closed_form_s("bell").unwrap().evaluate(z).unwrap();
    assert!((s.re - expect).abs() < 1e-15 && s.im == 0.0);
    assert!((bell_s_integral(z).unwrap() - s).norm() < 1e-12);
}
