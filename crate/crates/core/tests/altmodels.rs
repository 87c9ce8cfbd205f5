mod common;

use common::{integrate, rel_err};
use ncbeta_core::altmodels::*;
use ncbeta_core::{CHParams, G3BParams, GHParams, SeriesControl};

fn c() -> SeriesControl {
    SeriesControl::default()
}

#[test]
fn g3b_density_and_cdf() {
    let p = G3BParams::new(2.0, 3.0, 0.4).unwrap();
    let total = integrate(|x| g3b_pdf(x, &p).unwrap(), 0.0, 1.0, 1e-13);
    assert!((total - 1.0).abs() < 1e-9);
    let p = G3BParams::new(1.5, 2.5, 0.7).unwrap();
    let quad = integrate(|x| g3b_pdf(x, &p).unwrap(), 0.0, 0.4, 1e-13);
    assert!((g3b_cdf(0.4, &p, true).unwrap() - quad).abs() < 1e-10);
    let up = g3b_cdf(0.4, &p, false).unwrap();
    assert!((up + quad - 1.0).abs() < 1e-10);
    for &g in &[0.5, 2.0, 7.0] {
        let (a, b) = g3b_limits_11(g);
        assert_eq!((a, b), (g, 1.0 / g));
        let q = G3BParams::new(1.0, 1.0, g).unwrap();
        assert!(rel_err(g3b_pdf(1e-9, &q).unwrap(), a) < 1e-7);
        assert!(rel_err(g3b_pdf(1.0 - 1e-9, &q).unwrap(), b) < 1e-7);
    }
}

#[test]
fn g3b_moments() {
    for &g in &[3.0, 0.5] {
        let p = G3BParams::new(1.5, 2.5, g).unwrap();
        for r in 1..=2 {
            let quad = integrate(|x| x.powi(r) * g3b_pdf(x, &p).unwrap(), 0.0, 1.0, 1e-14);
            assert!(rel_err(g3b_moment(r as usize, &p, c()).unwrap(), quad) < 1e-7);
        }
    }
    for &g in &[0.2, 0.97, 1.0, 1.03, 6.0] {
        let p = G3BParams::new(1.0, 1.0, g).unwrap();
        assert!(rel_err(g3b_mean_11(g), g3b_moment(1, &p, c()).unwrap()) < 1e-12);
    }
}

#[test]
fn gh_density_and_moments() {
    let p = GHParams::new(1.0, 1.0, 2.0, 1.5).unwrap();
    let total = integrate(|x| gh_pdf(x, &p, c()).unwrap(), 0.0, 1.0, 1e-13);
    assert!((total - 1.0).abs() < 1e-10);
    let quad = integrate(|x| x * gh_pdf(x, &p, c()).unwrap(), 0.0, 1.0, 1e-14);
    assert!(rel_err(gh_moment(1, &p, c()).unwrap(), quad) < 1e-7);
    let q = GHParams::new(2.5, 1.5, -1.2, 4.0).unwrap();
    let total = integrate(|x| gh_pdf(x, &q, c()).unwrap(), 0.0, 1.0, 1e-13);
    assert!((total - 1.0).abs() < 1e-10);
    let (a, b) = gh_limits_11(&p).unwrap();
    assert!(rel_err(gh_pdf(1e-10, &p, c()).unwrap(), a) < 1e-8);
    assert!(rel_err(gh_pdf(1.0 - 1e-10, &p, c()).unwrap(), b) < 1e-8);
    assert!(GHParams::new(1.0, 1.0, 1.0, -1.0).is_err());
}

#[test]
fn ch_density_and_moments() {
    for &d in &[-3.0, 0.0, 1e-4, 2.0, 40.0] {
        let p = CHParams::new(1.0, 1.0, d).unwrap();
        for k in 1..10 {
            let x = k as f64 / 10.0;
            assert!(rel_err(ch_pdf_11(x, d), ch_pdf(x, &p, c()).unwrap()) < 1e-10);
        }
        assert!(rel_err(ch_mean_11(d), ch_moment(1, &p, c()).unwrap()) < 1e-10);
    }
    let e2 = 2f64.exp();
    let (a, b) = ch_limits_11(2.0);
    assert!(rel_err(a, 2.0 * e2 / (e2 - 1.0)) < 1e-14);
    assert!(rel_err(b, 2.0 / (e2 - 1.0)) < 1e-14);
    assert!(rel_err(ch_pdf_11(1e-12, 2.0), a) < 1e-10);
    let p = CHParams::new(2.0, 3.0, 1.5).unwrap();
    let total = integrate(|x| ch_pdf(x, &p, c()).unwrap(), 0.0, 1.0, 1e-13);
    assert!((total - 1.0).abs() < 1e-10);
    let quad = integrate(|x| x * x * ch_pdf(x, &p, c()).unwrap(), 0.0, 1.0, 1e-14);
    assert!(rel_err(ch_moment(2, &p, c()).unwrap(), quad) < 1e-8);
}
