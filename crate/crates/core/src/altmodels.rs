//! Competing unit-interval models: Libby–Novick G3B, Gauss hypergeometric
//! (GH) and confluent hypergeometric (CH).

use crate::error::{Error, Result};
use crate::ncbeta::{check_x, G3BParams};
use crate::specfun::{
    binomial, gauss_2f1, kummer_1f1_scaled, ln_beta_pdf, pochhammer, reg_inc_beta,
    reg_inc_beta_upper, SeriesControl,
};

const MAX_MOMENT: usize = 8;

fn check_order(r: usize) -> Result<()> {
    if r == 0 || r > MAX_MOMENT {
        return Err(Error::domain(format!(
            "moment order must be in 1..={MAX_MOMENT}, got {r}"
        )));
    }
    Ok(())
}

/// Log density of G3B(β₁, β₂, γ).
pub fn g3b_ln_pdf(x: f64, p: &G3BParams) -> Result<f64> {
    check_x(x)?;
    let (b1, b2, g) = (p.b1(), p.b2(), p.gamma());
    Ok(ln_beta_pdf(x, b1, b2)? + b1 * g.ln() - (b1 + b2) * (1.0 - (1.0 - g) * x).ln())
}

pub fn g3b_pdf(x: f64, p: &G3BParams) -> Result<f64> {
    Ok(g3b_ln_pdf(x, p)?.exp())
}

/// G3B distribution function through I_{γx/(γx+1-x)}(β₁, β₂).
pub fn g3b_cdf(x: f64, p: &G3BParams, lower_tail: bool) -> Result<f64> {
    check_x(x)?;
    let g = p.gamma();
    let u = g * x / (g * x + 1.0 - x);
    if lower_tail {
        reg_inc_beta(u, p.b1(), p.b2())
    } else {
        reg_inc_beta_upper(u, p.b1(), p.b2())
    }
}

/// r-th raw moment: (β₁)_r/(β₁+β₂)_r γ^{β₁} ₂F₁(β₁+r, β₁+β₂; β₁+β₂+r; 1-γ).
pub fn g3b_moment(r: usize, p: &G3BParams, ctrl: SeriesControl) -> Result<f64> {
    check_order(r)?;
    let (b1, b2, g) = (p.b1(), p.b2(), p.gamma());
    let rf = r as f64;
    let pre = pochhammer(b1, r) / pochhammer(b1 + b2, r);
    if g == 1.0 {
        return Ok(pre);
    }
    Ok(pre * g.powf(b1) * gauss_2f1(b1 + rf, b1 + b2, b1 + b2 + rf, 1.0 - g, ctrl)?)
}

/// Mean of G3B(1,1,γ): (1 - γ + γ ln γ)/(1 - γ)².
pub fn g3b_mean_11(gamma: f64) -> f64 {
    let t = gamma - 1.0;
    if t.abs() < 0.05 {
        // Σ_{k≥2} (-t)^{k-2}/(k(k-1))
        let mut s = 0.0;
        let mut pw = 1.0;
        for k in 2..40 {
            s += pw / (k * (k - 1)) as f64;
            pw *= -t;
        }
        return s;
    }
    (1.0 - gamma + gamma * gamma.ln()) / (t * t)
}

/// Limits of the G3B(1,1,γ) density at 0 and 1.
pub fn g3b_limits_11(gamma: f64) -> (f64, f64) {
    (gamma, 1.0 / gamma)
}

/// Gauss hypergeometric distribution GH(a, b, λ, z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GHParams {
    pub a: f64,
    pub b: f64,
    pub lam: f64,
    pub z: f64,
}

impl GHParams {
    pub fn new(a: f64, b: f64, lam: f64, z: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(Error::domain(format!(
                "GH shapes must be > 0, got ({a}, {b})"
            )));
        }
        if !lam.is_finite() {
            return Err(Error::domain("GH lambda must be finite"));
        }
        if !(z > -1.0) || !z.is_finite() {
            return Err(Error::domain(format!("GH needs z > -1, got {z}")));
        }
        Ok(GHParams { a, b, lam, z })
    }
}

/// ln ₂F₁(λ, a; a+b; -z), the GH normalising constant.
pub fn gh_ln_norm(p: &GHParams, ctrl: SeriesControl) -> Result<f64> {
    if p.z == 0.0 || p.lam == 0.0 {
        return Ok(0.0);
    }
    if p.a == 1.0 && p.b == 1.0 {
        return Ok(gh_norm_11(p.lam, p.z).ln());
    }
    Ok(gauss_2f1(p.lam, p.a, p.a + p.b, -p.z, ctrl)?.ln())
}

/// ₂F₁(λ, 1; 2; -z) = ((1+z)^{1-λ} - 1)/((1-λ) z), or ln(1+z)/z at λ = 1.
pub fn gh_norm_11(lam: f64, z: f64) -> f64 {
    if z == 0.0 {
        return 1.0;
    }
    let l1p = z.ln_1p();
    let e = 1.0 - lam;
    if e == 0.0 {
        return l1p / z;
    }
    let t = e * l1p;
    if t.abs() < 1e-8 {
        // expm1(t)/(e z) with t tiny
        return l1p / z * (1.0 + 0.5 * t);
    }
    t.exp_m1() / (e * z)
}

pub fn gh_ln_pdf(x: f64, p: &GHParams, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    Ok(ln_beta_pdf(x, p.a, p.b)? - p.lam * (p.z * x).ln_1p() - gh_ln_norm(p, ctrl)?)
}

pub fn gh_pdf(x: f64, p: &GHParams, ctrl: SeriesControl) -> Result<f64> {
    Ok(gh_ln_pdf(x, p, ctrl)?.exp())
}

/// r-th raw moment as a ratio of ₂F₁ values.
pub fn gh_moment(r: usize, p: &GHParams, ctrl: SeriesControl) -> Result<f64> {
    check_order(r)?;
    let rf = r as f64;
    let pre = pochhammer(p.a, r) / pochhammer(p.a + p.b, r);
    if p.z == 0.0 || p.lam == 0.0 {
        return Ok(pre);
    }
    let num = gauss_2f1(p.lam, p.a + rf, p.a + p.b + rf, -p.z, ctrl)?;
    Ok(pre * num / gh_ln_norm(p, ctrl)?.exp())
}

/// First two raw moments of GH(1,1,λ,z) without hypergeometric calls.
pub fn gh_moments_11(lam: f64, z: f64) -> (f64, f64) {
    if z == 0.0 || lam == 0.0 {
        return (0.5, 1.0 / 3.0);
    }
    let j = |r: usize| gh_unit_integral(r, lam, z);
    let j0 = j(0);
    (j(1) / j0, j(2) / j0)
}

// ∫₀¹ xʳ (1+zx)^{-λ} dx
fn gh_unit_integral(r: usize, lam: f64, z: f64) -> f64 {
    let rf = r as f64;
    if z.abs() < 0.5 {
        let mut t = 1.0;
        let mut sum = 1.0 / (rf + 1.0);
        for k in 0..200 {
            let kf = k as f64;
            t *= (lam + kf) * -z / (kf + 1.0);
            let term = t / (rf + kf + 2.0);
            sum += term;
            if term.abs() <= 1e-17 * sum.abs() {
                break;
            }
        }
        return sum;
    }
    // substitute u = 1 + zx and expand (u - 1)^r
    let l1p = z.ln_1p();
    let int_pow = |s: f64| {
        if s == 0.0 {
            l1p
        } else {
            (s * l1p).exp_m1() / s
        }
    };
    let mut acc = 0.0;
    for i in 0..=r {
        let sign = if (r - i) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(r, i) * int_pow(i as f64 + 1.0 - lam);
    }
    acc / z.powi(r as i32 + 1)
}

/// Limits of the GH(1,1,λ,z) density at 0 and 1.
pub fn gh_limits_11(p: &GHParams) -> Result<(f64, f64)> {
    if p.a != 1.0 || p.b != 1.0 {
        return Err(Error::domain("GH limits are available for a = b = 1 only"));
    }
    let n = gh_norm_11(p.lam, p.z);
    Ok((1.0 / n, (1.0 + p.z).powf(-p.lam) / n))
}

/// Confluent hypergeometric distribution CH(c, d, δ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CHParams {
    pub c: f64,
    pub d: f64,
    pub delta: f64,
}

impl CHParams {
    pub fn new(c: f64, d: f64, delta: f64) -> Result<Self> {
        if !(c > 0.0 && d > 0.0) || !c.is_finite() || !d.is_finite() {
            return Err(Error::domain(format!(
                "CH shapes must be > 0, got ({c}, {d})"
            )));
        }
        if !delta.is_finite() {
            return Err(Error::domain("CH delta must be finite"));
        }
        Ok(CHParams { c, d, delta })
    }
}

/// ln ₁F₁(c; c+d; -δ), the CH normalising constant.
fn ch_ln_norm(p: &CHParams, ctrl: SeriesControl) -> Result<f64> {
    if p.delta == 0.0 {
        return Ok(0.0);
    }
    if p.c == 1.0 && p.d == 1.0 {
        return Ok(-ch_ln_scale_11(p.delta));
    }
    Ok(kummer_1f1_scaled(p.c, p.c + p.d, -p.delta, ctrl)?.ln_abs())
}

// ln of δ/(1-e^{-δ}), the reciprocal of ₁F₁(1; 2; -δ)
pub(crate) fn ch_ln_scale_11(delta: f64) -> f64 {
    if delta == 0.0 {
        return 0.0;
    }
    if delta > 0.0 {
        delta.ln() - (-(-delta).exp_m1()).ln()
    } else {
        // δ/(1-e^{-δ}) = |δ|/(e^{|δ|}-1)
        let a = -delta;
        a.ln() - a.exp_m1().ln()
    }
}

pub fn ch_ln_pdf(x: f64, p: &CHParams, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    Ok(ln_beta_pdf(x, p.c, p.d)? - p.delta * x - ch_ln_norm(p, ctrl)?)
}

pub fn ch_pdf(x: f64, p: &CHParams, ctrl: SeriesControl) -> Result<f64> {
    Ok(ch_ln_pdf(x, p, ctrl)?.exp())
}

/// CH(1,1,δ) density δ e^{δ(1-x)}/(e^δ - 1); uniform at δ = 0.
pub fn ch_pdf_11(x: f64, delta: f64) -> f64 {
    (ch_ln_scale_11(delta) - delta * x).exp()
}

/// Mean of CH(1,1,δ): 1/δ - 1/(e^δ - 1).
pub fn ch_mean_11(delta: f64) -> f64 {
    if delta.abs() < 1e-2 {
        let d2 = delta * delta;
        return 0.5 - delta / 12.0 + delta * d2 / 720.0 - delta * d2 * d2 / 30240.0;
    }
    1.0 / delta - 1.0 / delta.exp_m1()
}

/// r-th raw moment as a ratio of ₁F₁ values.
pub fn ch_moment(r: usize, p: &CHParams, ctrl: SeriesControl) -> Result<f64> {
    check_order(r)?;
    let rf = r as f64;
    let pre = pochhammer(p.c, r) / pochhammer(p.c + p.d, r);
    if p.delta == 0.0 {
        return Ok(pre);
    }
    let num = kummer_1f1_scaled(p.c + rf, p.c + p.d + rf, -p.delta, ctrl)?.ln_abs();
    Ok(pre * (num - ch_ln_norm(p, ctrl)?).exp())
}

/// Limits of the CH(1,1,δ) density at 0 and 1.
pub fn ch_limits_11(delta: f64) -> (f64, f64) {
    let s = ch_ln_scale_11(delta).exp();
    (s, s * (-delta).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> SeriesControl {
        SeriesControl::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn neutral_parameters_give_beta() {
        let x = 0.37;
        let beta = ln_beta_pdf(x, 2.0, 3.5).unwrap().exp();
        let g = G3BParams::new(2.0, 3.5, 1.0).unwrap();
        assert!(rel(g3b_pdf(x, &g).unwrap(), beta) < 1e-12);
        let gh = GHParams::new(2.0, 3.5, 1.7, 0.0).unwrap();
        assert!(rel(gh_pdf(x, &gh, c()).unwrap(), beta) < 1e-12);
        let ch = CHParams::new(2.0, 3.5, 0.0).unwrap();
        assert!(rel(ch_pdf(x, &ch, c()).unwrap(), beta) < 1e-12);
        assert!(rel(g3b_moment(2, &g, c()).unwrap(), 6.0 / (5.5 * 6.5)) < 1e-14);
    }

    #[test]
    fn unit_shape_limits() {
        let (a, b) = g3b_limits_11(2.5);
        assert_eq!(a * b, 1.0);
        let (a, b) = ch_limits_11(2.0);
        let e2 = 2f64.exp();
        assert!(rel(a, 2.0 * e2 / (e2 - 1.0)) < 1e-15);
        assert!(rel(b, 2.0 / (e2 - 1.0)) < 1e-15);
        assert_eq!(ch_limits_11(0.0), (1.0, 1.0));
        let gh = GHParams::new(1.0, 1.0, 0.0, 3.0).unwrap();
        assert_eq!(gh_limits_11(&gh).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn ch_closed_form_matches_general() {
        for delta in [-3.0, -0.2, 0.7, 2.0, 40.0] {
            let p = CHParams::new(1.0, 1.0, delta).unwrap();
            let general = ln_beta_pdf(0.4, 1.0, 1.0).unwrap()
                - delta * 0.4
                - kummer_1f1_scaled(1.0, 2.0, -delta, c()).unwrap().ln_abs();
            assert!(rel(ch_pdf(0.4, &p, c()).unwrap(), general.exp()) < 1e-12);
            assert!(rel(ch_pdf_11(0.4, delta), general.exp()) < 1e-12);
        }
    }

    #[test]
    fn gh_closed_norm_matches_series() {
        for (lam, z) in [(2.0, 0.5), (0.5, -0.5), (1.0, 0.3), (-1.5, 0.8)] {
            let a = gh_norm_11(lam, z);
            let b = gauss_2f1(lam, 1.0, 2.0, -z, c()).unwrap();
            assert!(rel(a, b) < 1e-13, "{lam} {z} {a} {b}");
        }
    }

    #[test]
    fn unit_shape_means() {
        for g in [0.01, 0.5, 0.97, 1.0, 1.03, 3.0, 200.0] {
            let m = g3b_moment(1, &G3BParams::new(1.0, 1.0, g).unwrap(), c()).unwrap();
            assert!(rel(g3b_mean_11(g), m) < 1e-12, "{g}");
        }
        for d in [-30.0, -1.0, -0.005, 0.0, 0.009, 0.5, 12.0] {
            let m = ch_moment(1, &CHParams::new(1.0, 1.0, d).unwrap(), c()).unwrap();
            assert!(rel(ch_mean_11(d), m) < 1e-12, "{d}");
        }
    }

    #[test]
    fn validation() {
        assert!(GHParams::new(1.0, 1.0, 1.0, -1.0).is_err());
        assert!(CHParams::new(0.0, 1.0, 1.0).is_err());
        assert!(gh_limits_11(&GHParams::new(2.0, 1.0, 1.0, 1.0).unwrap()).is_err());
    }
    #[test]
    fn gh_closed_moments_match_hypergeometric() {
        let c = SeriesControl::default();
        for &(lam, z) in &[
            (2.0, 1.5),
            (-1.3, 0.2),
            (0.7, -0.6),
            (5.0, 20.0),
            (1.0, -0.3),
            (3.0, 0.49),
            (3.0, 0.51),
        ] {
            let p = GHParams::new(1.0, 1.0, lam, z).unwrap();
            let (m1, m2) = gh_moments_11(lam, z);
            let e1 = gh_moment(1, &p, c).unwrap();
            let e2 = gh_moment(2, &p, c).unwrap();
            assert!(
                (m1 - e1).abs() < 1e-12 * e1 && (m2 - e2).abs() < 1e-12 * e2,
                "{lam} {z}: {m1} {e1} {m2} {e2}"
            );
        }
    }
}
