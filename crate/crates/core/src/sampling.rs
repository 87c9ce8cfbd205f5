//! Seeded random streams and the three doubly non-central beta samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Binomial, Distribution, Gamma, Poisson};

use crate::error::{Error, Result};
use crate::ncbeta::{DnCBetaParams, G3BParams};
use crate::ncchisq::{self, NcChiSqParams};

/// Reproducible random stream seeded by a 64-bit integer.
///
/// The same seed yields the same sequence on every platform for a given
/// crate version.
#[derive(Debug, Clone)]
pub struct RandomStream {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64) -> Self {
        RandomStream {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn uniform(&mut self) -> f64 {
        loop {
            let u: f64 = self.rng.random();
            if u > 0.0 {
                return u;
            }
        }
    }

    /// Gamma draw with the given shape and scale.
    ///
    /// # Panics
    /// If `shape` or `scale` is not positive and finite.
    pub fn gamma(&mut self, shape: f64, scale: f64) -> f64 {
        Gamma::new(shape, scale)
            .expect("gamma parameters must be positive")
            .sample(&mut self.rng)
    }

    /// Central chi-squared draw; zero degrees of freedom give the point mass at 0.
    pub fn chisq(&mut self, df: f64) -> f64 {
        if df == 0.0 {
            0.0
        } else {
            2.0 * self.gamma(0.5 * df, 1.0)
        }
    }

    /// Poisson draw; a zero mean gives 0.
    pub fn poisson(&mut self, mean: f64) -> u64 {
        if mean == 0.0 {
            return 0;
        }
        let d: Poisson<f64> = Poisson::new(mean).expect("poisson mean must be positive");
        d.sample(&mut self.rng) as u64
    }

    pub fn binomial(&mut self, n: u64, p: f64) -> u64 {
        Binomial::new(n, p)
            .expect("binomial p must lie in [0,1]")
            .sample(&mut self.rng)
    }

    /// Beta draw. A zero first shape is the constant 0, a zero second shape the constant 1.
    pub fn beta(&mut self, a: f64, b: f64) -> f64 {
        match (a == 0.0, b == 0.0) {
            (true, false) => 0.0,
            (false, true) => 1.0,
            (true, true) => panic!("beta draw with both shapes zero"),
            _ => Beta::new(a, b)
                .expect("beta shapes must be positive")
                .sample(&mut self.rng),
        }
    }
}

/// Draws `Y1/(Y1+Y2)` with independent non-central chi-squared components.
///
/// When both shapes are zero and both components come out zero the draw is
/// repeated, which conditions on the ratio being defined.
pub fn sample_definition(n: usize, p: &DnCBetaParams, rng: &mut RandomStream) -> Vec<f64> {
    let c1 = chi_params(2.0 * p.a1(), p.l1());
    let c2 = chi_params(2.0 * p.a2(), p.l2());
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let y1 = ncchisq::draw(&c1, rng);
        let y2 = ncchisq::draw(&c2, rng);
        let s = y1 + y2;
        if s > 0.0 {
            out.push(y1 / s);
        }
    }
    out
}

fn chi_params(g: f64, lambda: f64) -> NcChiSqParams {
    NcChiSqParams::new(g, lambda).expect("validated by DnCBetaParams")
}

/// Poisson mixture of beta distributions. Needs both shapes positive.
pub fn sample_mixture(n: usize, p: &DnCBetaParams, rng: &mut RandomStream) -> Result<Vec<f64>> {
    p.require_shapes()?;
    Ok((0..n)
        .map(|_| {
            let m1 = rng.poisson(0.5 * p.l1()) as f64;
            let m2 = rng.poisson(0.5 * p.l2()) as f64;
            rng.beta(p.a1() + m1, p.a2() + m2)
        })
        .collect())
}

/// Convex combination of a central beta and a purely non-central beta.
pub fn sample_convex(n: usize, p: &DnCBetaParams, rng: &mut RandomStream) -> Vec<f64> {
    let (a1, a2) = (p.a1(), p.a2());
    let lp = p.l_plus();
    let theta = if lp > 0.0 { p.l1() / lp } else { 0.0 };
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let m = rng.poisson(0.5 * lp);
        if m == 0 {
            if a1 + a2 > 0.0 {
                out.push(rng.beta(a1, a2));
            }
            continue;
        }
        let x = if a1 + a2 > 0.0 { rng.beta(a1, a2) } else { 0.0 };
        let w = if a1 + a2 > 0.0 {
            rng.beta(a1 + a2, m as f64)
        } else {
            0.0
        };
        let i = rng.binomial(m, theta);
        let pnc = rng.beta(i as f64, (m - i) as f64);
        out.push(w * x + (1.0 - w) * pnc);
    }
    out
}

/// Sampler route for the doubly non-central beta.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Definition,
    Mixture,
    Convex,
}

pub fn sample(
    route: Route,
    n: usize,
    p: &DnCBetaParams,
    rng: &mut RandomStream,
) -> Result<Vec<f64>> {
    match route {
        Route::Definition => Ok(sample_definition(n, p, rng)),
        Route::Mixture => sample_mixture(n, p, rng),
        Route::Convex => Ok(sample_convex(n, p, rng)),
    }
}

/// Draws from the three-parameter generalised beta by transforming a beta draw.
pub fn sample_g3b(n: usize, p: &G3BParams, rng: &mut RandomStream) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let b = rng.beta(p.b1(), p.b2());
            b / (b + p.gamma() * (1.0 - b))
        })
        .collect()
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "definition" => Ok(Route::Definition),
            "mixture" => Ok(Route::Mixture),
            "convex" => Ok(Route::Convex),
            _ => Err(Error::domain(format!("unknown sampling route `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinism() {
        let p = DnCBetaParams::new(1.0, 1.0, 2.0, 4.0).unwrap();
        for route in [Route::Definition, Route::Mixture, Route::Convex] {
            let a = sample(route, 200, &p, &mut RandomStream::new(9)).unwrap();
            let b = sample(route, 200, &p, &mut RandomStream::new(9)).unwrap();
            assert_eq!(a, b);
            let c = sample(route, 200, &p, &mut RandomStream::new(10)).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn point_masses() {
        let mut r = RandomStream::new(1);
        assert_eq!(r.beta(0.0, 3.0), 0.0);
        assert_eq!(r.beta(3.0, 0.0), 1.0);
        assert_eq!(r.poisson(0.0), 0);
        assert_eq!(r.chisq(0.0), 0.0);
    }

    #[test]
    fn zero_noncentrality_convex_is_beta() {
        let p = DnCBetaParams::new(2.0, 3.0, 0.0, 0.0).unwrap();
        let a = sample_convex(50, &p, &mut RandomStream::new(4));
        let mut r = RandomStream::new(4);
        let b: Vec<f64> = (0..50)
            .map(|_| {
                r.poisson(0.0);
                r.beta(2.0, 3.0)
            })
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn mixture_rejects_zero_shape() {
        let p = DnCBetaParams::new(0.0, 1.0, 2.0, 0.0).unwrap();
        assert!(sample_mixture(10, &p, &mut RandomStream::new(1)).is_err());
        let v = sample_convex(1000, &p, &mut RandomStream::new(1));
        assert!(v.iter().all(|x| (0.0..=1.0).contains(x)));
        let d = sample_definition(1000, &p, &mut RandomStream::new(1));
        assert!(d.iter().any(|&x| x == 0.0));
    }
}
