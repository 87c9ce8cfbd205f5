//! Double-exponential (tanh-sinh) quadrature on (0, 1).

use crate::error::{Error, Result};

const U_MAX: f64 = 6.1;
const MAX_LEVEL: usize = 12;

/// Integrates `f(t, 1 - t)` over (0, 1).
///
/// The complement is passed separately so integrands with `(1-t)^p`
/// factors keep full precision next to the upper endpoint.
pub(crate) fn tanh_sinh(mut f: impl FnMut(f64, f64) -> f64, rel_tol: f64) -> Result<f64> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut node = |u: f64| -> f64 {
        let v = half_pi * u.sinh();
        let e = (2.0 * v).exp();
        let t = e / (1.0 + e);
        let omt = 1.0 / (1.0 + e);
        if t <= 0.0 || omt <= 0.0 || !e.is_finite() {
            return 0.0;
        }
        let sech = 2.0 / (v.exp() + (-v).exp());
        let w = 0.5 * half_pi * u.cosh() * sech * sech;
        let y = f(t, omt);
        if y.is_finite() {
            w * y
        } else {
            0.0
        }
    };

    let mut h = 0.5;
    let mut sum = node(0.0);
    let mut k = 1;
    while k as f64 * h <= U_MAX {
        let u = k as f64 * h;
        sum += node(u) + node(-u);
        k += 1;
    }
    let mut est = sum * h;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= U_MAX {
            let u = k as f64 * h;
            sum += node(u) + node(-u);
            k += 2;
        }
        let next = sum * h;
        if level >= 3 && (next - est).abs() <= rel_tol * next.abs() {
            return Ok(next);
        }
        est = next;
    }
    Err(Error::Convergence {
        series: "tanh-sinh quadrature",
        partial_sum: est,
        terms: MAX_LEVEL,
    })
}
