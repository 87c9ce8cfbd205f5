mod common;

use common::{ks_critical_01, ks_statistic, mean_se};
use ncbeta_core::ncbeta::{mean_11, moment};
use ncbeta_core::sampling::*;
use ncbeta_core::{DnCBetaParams, RandomStream, SeriesControl};

fn p(a1: f64, a2: f64, l1: f64, l2: f64) -> DnCBetaParams {
    DnCBetaParams::new(a1, a2, l1, l2).unwrap()
}

#[test]
fn definition_route_moments() {
    let mut rng = RandomStream::new(3);
    let xs = sample_definition(100_000, &p(1.0, 1.0, 2.0, 4.0), &mut rng);
    let (m, se) = mean_se(&xs);
    assert!((m - mean_11(2.0, 4.0).unwrap()).abs() < 4.0 * se);
    let q = p(0.5, 0.5, 4.0, 7.0);
    let xs = sample_definition(100_000, &q, &mut rng);
    let c = SeriesControl::default();
    let (m, se) = mean_se(&xs);
    assert!((m - moment(1, &q, c).unwrap()).abs() < 4.0 * se);
    let sq: Vec<f64> = xs.iter().map(|x| x * x).collect();
    let (m2, se2) = mean_se(&sq);
    assert!((m2 - moment(2, &q, c).unwrap()).abs() < 4.0 * se2);
}

#[test]
fn routes_agree_by_ks() {
    let n = 10_000;
    for q in [p(1.0, 1.0, 2.0, 4.0), p(2.0, 5.0, 0.5, 7.0)] {
        let a = sample_definition(n, &q, &mut RandomStream::new(21));
        let b = sample_mixture(n, &q, &mut RandomStream::new(22)).unwrap();
        let c = sample_convex(n, &q, &mut RandomStream::new(23));
        let crit = ks_critical_01(n, n);
        assert!(ks_statistic(&a, &b) < crit);
        assert!(ks_statistic(&a, &c) < crit);
    }
}

#[test]
fn seeded_streams_repeat() {
    let q = p(1.0, 1.0, 2.0, 4.0);
    for route in [Route::Definition, Route::Mixture, Route::Convex] {
        let a = sample(route, 50, &q, &mut RandomStream::new(5)).unwrap();
        let b = sample(route, 50, &q, &mut RandomStream::new(5)).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|&x| x > 0.0 && x < 1.0));
    }
    assert_eq!("mixture".parse::<Route>().unwrap(), Route::Mixture);
    assert!("other".parse::<Route>().is_err());
}

#[test]
fn purely_noncentral_components() {
    let q = p(0.0, 1.0, 3.0, 0.0);
    let xs = sample_definition(2000, &q, &mut RandomStream::new(8));
    assert!(xs.iter().all(|x| (0.0..=1.0).contains(x)));
    assert!(sample_mixture(10, &q, &mut RandomStream::new(8)).is_err());
}
