//! Special functions shared by every distribution in the crate.
//!
//! Infinite series are driven by [`SeriesControl`]: a sum is accepted once
//! adding the next term no longer moves it (bitwise when `tol == 0`, or by
//! at most `tol` relative otherwise) and the terms have started to shrink.

mod combinatorics;
mod hyper;
mod incomplete;
pub(crate) mod quad;
mod scaled;

pub use combinatorics::{
    binomial, poch_derivative, pochhammer, pochhammer_sum_split, stirling1_signed,
    stirling1_unsigned, stirling2, PochPoly, STIRLING_MAX,
};
pub use hyper::{
    gauss_2f1, generalized_2f2, humbert_psi2, humbert_psi2_scaled, kummer_1f1, kummer_1f1_scaled,
    ln_humbert_psi2, ln_humbert_psi2_unit, ln_kummer_1f1,
};
pub use incomplete::{
    ln_beta, ln_gamma, reg_inc_beta, reg_inc_beta_upper, reg_lower_gamma, upper_inc_gamma,
};
pub use scaled::Scaled;

use crate::error::{Error, Result};

/// Truncation settings for every infinite series in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    /// Relative tolerance; zero means "until the partial sum stops changing".
    pub tol: f64,
    /// Maximum number of terms.
    pub maxiter: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            tol: 0.0,
            maxiter: 2000,
        }
    }
}

impl SeriesControl {
    pub fn new(tol: f64, maxiter: usize) -> Result<Self> {
        if !(tol >= 0.0) || !tol.is_finite() {
            return Err(Error::domain(format!(
                "tol must be finite and >= 0, got {tol}"
            )));
        }
        if maxiter == 0 {
            return Err(Error::domain("maxiter must be at least 1"));
        }
        Ok(SeriesControl { tol, maxiter })
    }

    /// Whether moving from `old` to `new` counts as converged.
    #[inline]
    pub(crate) fn is_good(&self, old: f64, new: f64) -> bool {
        if self.tol == 0.0 {
            old == new
        } else {
            (new - old).abs() <= self.tol * new.abs()
        }
    }

    #[inline]
    pub(crate) fn is_good_scaled(&self, old: Scaled, new: Scaled, term: Scaled) -> bool {
        if self.tol == 0.0 {
            old == new
        } else {
            term.is_zero() || term.ln_abs() <= self.tol.ln() + new.ln_abs()
        }
    }
}

/// Sums `1 + t1 + t2 + ...` where `t_{k+1} = t_k * ratio(k)`.
///
/// Stops after a term that leaves the sum unchanged (per `ctrl`) while the
/// term magnitudes are non-increasing, or when `ratio` returns exactly zero.
pub(crate) fn ratio_series(
    name: &'static str,
    ctrl: SeriesControl,
    mut ratio: impl FnMut(usize) -> f64,
) -> Result<Scaled> {
    let mut term = Scaled::ONE;
    let mut sum = Scaled::ONE;
    let mut prev_ln = 0.0;
    for k in 0..ctrl.maxiter {
        let r = ratio(k);
        if r == 0.0 {
            return Ok(sum);
        }
        if !r.is_finite() {
            return Err(Error::Convergence {
                series: name,
                partial_sum: sum.value(),
                terms: k + 1,
            });
        }
        term = term.mul_f64(r);
        let next = sum.add(term);
        let ln_t = term.ln_abs();
        let good = ctrl.is_good_scaled(sum, next, term) && ln_t <= prev_ln;
        prev_ln = ln_t;
        sum = next;
        if good {
            return Ok(sum);
        }
    }
    Err(Error::Convergence {
        series: name,
        partial_sum: sum.value(),
        terms: ctrl.maxiter,
    })
}

/// Sums `Σ_k Pois(k; mu) f(k)` for `0 <= f <= 1`, walking out from the mode.
///
/// Each direction stops once the Poisson weight alone can no longer move the sum.
pub(crate) fn poisson_bounded_sum(
    name: &'static str,
    mu: f64,
    ctrl: SeriesControl,
    mut f: impl FnMut(u64) -> Result<f64>,
) -> Result<f64> {
    if mu == 0.0 {
        return f(0);
    }
    let mode = mu.floor();
    let w_mode = (-mu + mode * mu.ln() - ln_gamma(mode + 1.0)?).exp();
    let mode = mode as u64;
    let mut sum = w_mode * f(mode)?;
    let mut terms = 1usize;

    let mut w = w_mode;
    let mut k = mode;
    loop {
        w *= mu / (k + 1) as f64;
        k += 1;
        let next = sum + w * f(k)?;
        terms += 1;
        let bound_good = ctrl.is_good(sum, sum + w);
        sum = next;
        if bound_good || w == 0.0 {
            break;
        }
        if terms >= ctrl.maxiter {
            return Err(Error::Convergence {
                series: name,
                partial_sum: sum,
                terms,
            });
        }
    }

    let mut w = w_mode;
    let mut k = mode;
    while k > 0 {
        w *= k as f64 / mu;
        k -= 1;
        let next = sum + w * f(k)?;
        terms += 1;
        let bound_good = ctrl.is_good(sum, sum + w);
        sum = next;
        if bound_good || w == 0.0 {
            break;
        }
        if terms >= ctrl.maxiter {
            return Err(Error::Convergence {
                series: name,
                partial_sum: sum,
                terms,
            });
        }
    }
    Ok(sum)
}

/// Density of Beta(a, b) at `x` on the log scale.
pub fn ln_beta_pdf(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!("x must lie in (0,1), got {x}")));
    }
    Ok((a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() - ln_beta(a, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn control_validation() {
        assert!(SeriesControl::new(-1.0, 10).is_err());
        assert!(SeriesControl::new(0.0, 0).is_err());
        assert!(SeriesControl::new(f64::NAN, 10).is_err());
        assert_eq!(
            SeriesControl::default(),
            SeriesControl::new(0.0, 2000).unwrap()
        );
    }

    #[test]
    fn exp_series() {
        let s = ratio_series("exp", SeriesControl::default(), |k| 1.5 / (k + 1) as f64).unwrap();
        assert!((s.value() - 1.5f64.exp()).abs() < 1e-15 * 1.5f64.exp());
    }

    #[test]
    fn maxiter_exhaustion_reports_partial_sum() {
        let ctrl = SeriesControl::new(0.0, 3).unwrap();
        let e = ratio_series("exp", ctrl, |k| 10.0 / (k + 1) as f64).unwrap_err();
        match e {
            Error::Convergence {
                terms, partial_sum, ..
            } => {
                assert_eq!(terms, 3);
                assert!((partial_sum - (1.0 + 10.0 + 50.0 + 1000.0 / 6.0)).abs() < 1e-12);
            }
            _ => panic!("{e:?}"),
        }
    }

    #[test]
    fn poisson_sum_of_one_is_one() {
        for mu in [0.3, 2.0, 17.5, 400.0] {
            let s = poisson_bounded_sum("t", mu, SeriesControl::default(), |_| Ok(1.0)).unwrap();
            assert!((s - 1.0).abs() < 1e-12, "{mu} {s}");
        }
    }
}
