//! Doubly non-central beta B″(α₁, α₂, λ₁, λ₂) and its type 1 / type 2 cases.

use crate::error::{Error, Result};
use crate::specfun::{
    binomial, generalized_2f2, humbert_psi2_scaled, kummer_1f1_scaled, ln_beta_pdf, pochhammer,
    poisson_bounded_sum, ratio_series, reg_inc_beta, reg_inc_beta_upper, Scaled, SeriesControl,
};

/// Highest moment order offered.
pub const MAX_MOMENT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DnCBetaParams {
    a1: f64,
    a2: f64,
    l1: f64,
    l2: f64,
}

fn nonneg(name: &str, v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(Error::domain(format!(
            "{name} must be finite and >= 0, got {v}"
        )));
    }
    Ok(())
}

fn positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::domain(format!(
            "{name} must be finite and > 0, got {v}"
        )));
    }
    Ok(())
}

impl DnCBetaParams {
    /// Shapes may be zero as long as the paired non-centrality is positive.
    pub fn new(a1: f64, a2: f64, l1: f64, l2: f64) -> Result<Self> {
        nonneg("a1", a1)?;
        nonneg("a2", a2)?;
        nonneg("l1", l1)?;
        nonneg("l2", l2)?;
        if a1 + l1 == 0.0 {
            return Err(Error::domain("a1 + l1 must be > 0"));
        }
        if a2 + l2 == 0.0 {
            return Err(Error::domain("a2 + l2 must be > 0"));
        }
        Ok(DnCBetaParams { a1, a2, l1, l2 })
    }

    pub fn a1(&self) -> f64 {
        self.a1
    }
    pub fn a2(&self) -> f64 {
        self.a2
    }
    pub fn l1(&self) -> f64 {
        self.l1
    }
    pub fn l2(&self) -> f64 {
        self.l2
    }
    pub fn a_plus(&self) -> f64 {
        self.a1 + self.a2
    }
    pub fn l_plus(&self) -> f64 {
        self.l1 + self.l2
    }

    /// λ₁/λ⁺, defined only when λ⁺ > 0.
    pub fn theta1(&self) -> Option<f64> {
        let lp = self.l_plus();
        (lp > 0.0).then(|| self.l1 / lp)
    }

    /// Parameters of the reflected variable 1 - X′.
    pub fn reflected(&self) -> Self {
        DnCBetaParams {
            a1: self.a2,
            a2: self.a1,
            l1: self.l2,
            l2: self.l1,
        }
    }

    pub(crate) fn require_shapes(&self) -> Result<()> {
        if self.a1 > 0.0 && self.a2 > 0.0 {
            Ok(())
        } else {
            Err(Error::domain("this operation needs a1 > 0 and a2 > 0"))
        }
    }
}

/// Type 1 non-central beta: non-centrality in the numerator only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nc1BetaParams {
    pub a1: f64,
    pub a2: f64,
    pub l: f64,
}

/// Type 2 non-central beta: non-centrality in the denominator only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nc2BetaParams {
    pub a1: f64,
    pub a2: f64,
    pub l: f64,
}

impl Nc1BetaParams {
    pub fn new(a1: f64, a2: f64, l: f64) -> Result<Self> {
        positive("a1", a1)?;
        positive("a2", a2)?;
        nonneg("l", l)?;
        Ok(Nc1BetaParams { a1, a2, l })
    }

    pub fn to_dncbeta(&self) -> DnCBetaParams {
        DnCBetaParams {
            a1: self.a1,
            a2: self.a2,
            l1: self.l,
            l2: 0.0,
        }
    }
}

impl Nc2BetaParams {
    pub fn new(a1: f64, a2: f64, l: f64) -> Result<Self> {
        positive("a1", a1)?;
        positive("a2", a2)?;
        nonneg("l", l)?;
        Ok(Nc2BetaParams { a1, a2, l })
    }

    pub fn to_dncbeta(&self) -> DnCBetaParams {
        DnCBetaParams {
            a1: self.a1,
            a2: self.a2,
            l1: 0.0,
            l2: self.l,
        }
    }
}

/// Libby–Novick generalised beta G3B(β₁, β₂, γ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G3BParams {
    b1: f64,
    b2: f64,
    gamma: f64,
}

impl G3BParams {
    pub fn new(b1: f64, b2: f64, gamma: f64) -> Result<Self> {
        positive("b1", b1)?;
        positive("b2", b2)?;
        positive("gamma", gamma)?;
        Ok(G3BParams { b1, b2, gamma })
    }
    pub fn b1(&self) -> f64 {
        self.b1
    }
    pub fn b2(&self) -> f64 {
        self.b2
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

pub(crate) fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!(
            "x must lie in the open interval (0,1), got {x}"
        )));
    }
    Ok(())
}

/// Log density through the Ψ₂ perturbation of the beta density.
pub fn ln_pdf(x: f64, p: &DnCBetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    p.require_shapes()?;
    let psi = humbert_psi2_scaled(
        p.a_plus(),
        p.a1,
        p.a2,
        0.5 * p.l1 * x,
        0.5 * p.l2 * (1.0 - x),
        ctrl,
    )?;
    Ok(ln_beta_pdf(x, p.a1, p.a2)? - 0.5 * p.l_plus() + psi.ln_abs())
}

/// Density of B″ at `x`.
pub fn pdf(x: f64, p: &DnCBetaParams, ctrl: SeriesControl) -> Result<f64> {
    Ok(ln_pdf(x, p, ctrl)?.exp())
}

/// Density as the double Poisson-weighted series of Beta(α₁+j, α₂+k) densities.
pub fn pdf_series(x: f64, p: &DnCBetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    p.require_shapes()?;
    let (m1, m2) = (0.5 * p.l1, 0.5 * p.l2);
    let ap = p.a_plus();
    let mut row_first = Scaled::from_ln(ln_beta_pdf(x, p.a1, p.a2)? - 0.5 * p.l_plus());
    let row = |j: usize, first: Scaled| -> Result<Scaled> {
        let jf = j as f64;
        let inner = ratio_series("B'' density inner series", ctrl, |k| {
            let k = k as f64;
            m2 * (1.0 - x) * (ap + jf + k) / ((k + 1.0) * (p.a2 + k))
        })?;
        Ok(first.mul(inner))
    };
    let mut sum = row(0, row_first)?;
    let mut prev_ln = sum.ln_abs();
    for j in 0..ctrl.maxiter {
        let jf = j as f64;
        let r = m1 * x * (ap + jf) / ((jf + 1.0) * (p.a1 + jf));
        if r == 0.0 {
            return Ok(sum.value());
        }
        row_first = row_first.mul_f64(r);
        let term = row(j + 1, row_first)?;
        let next = sum.add(term);
        let ln_t = term.ln_abs();
        let good = ctrl.is_good_scaled(sum, next, term) && ln_t <= prev_ln;
        prev_ln = ln_t;
        sum = next;
        if good {
            return Ok(sum.value());
        }
    }
    Err(Error::Convergence {
        series: "B'' density outer series",
        partial_sum: sum.value(),
        terms: ctrl.maxiter,
    })
}

/// Distribution function P(X′ ≤ x).
pub fn cdf(x: f64, p: &DnCBetaParams, ctrl: SeriesControl) -> Result<f64> {
    cdf_tail(x, p, true, ctrl)
}

/// Lower (`lower_tail = true`) or upper tail probability; each tail is summed directly.
pub fn cdf_tail(x: f64, p: &DnCBetaParams, lower_tail: bool, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    p.require_shapes()?;
    let v = poisson_bounded_sum("B'' cdf outer series", 0.5 * p.l1, ctrl, |j| {
        let a = p.a1 + j as f64;
        poisson_bounded_sum("B'' cdf inner series", 0.5 * p.l2, ctrl, |k| {
            let b = p.a2 + k as f64;
            if lower_tail {
                reg_inc_beta(x, a, b)
            } else {
                reg_inc_beta_upper(x, a, b)
            }
        })
    })?;
    Ok(v.clamp(0.0, 1.0))
}

/// Density of X′ given M⁺ = `mplus`: a binomial mixture of beta densities.
pub fn cond_pdf_given_mplus(x: f64, p: &DnCBetaParams, mplus: u64) -> Result<f64> {
    check_x(x)?;
    p.require_shapes()?;
    let theta = p
        .theta1()
        .ok_or_else(|| Error::domain("conditioning on M+ needs l1 + l2 > 0"))?;
    let m = mplus as usize;
    let mut s = 0.0;
    for i in 0..=m {
        let w = binomial(m, i) * theta.powi(i as i32) * (1.0 - theta).powi((m - i) as i32);
        if w == 0.0 {
            continue;
        }
        s += w * ln_beta_pdf(x, p.a1 + i as f64, p.a2 + (m - i) as f64)?.exp();
    }
    Ok(s)
}

/// Type 1 density via ₁F₁(α⁺; α₁; λx/2).
pub fn type1_pdf(x: f64, p: &Nc1BetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    let f = kummer_1f1_scaled(p.a1 + p.a2, p.a1, 0.5 * p.l * x, ctrl)?;
    Ok((ln_beta_pdf(x, p.a1, p.a2)? - 0.5 * p.l + f.ln_abs()).exp())
}

/// Type 2 density via ₁F₁(α⁺; α₂; λ(1-x)/2).
pub fn type2_pdf(x: f64, p: &Nc2BetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    let f = kummer_1f1_scaled(p.a1 + p.a2, p.a2, 0.5 * p.l * (1.0 - x), ctrl)?;
    Ok((ln_beta_pdf(x, p.a1, p.a2)? - 0.5 * p.l + f.ln_abs()).exp())
}

/// Type 1 density as the Poisson series of Beta(α₁+j, α₂) densities.
pub fn type1_pdf_series(x: f64, p: &Nc1BetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    let ap = p.a1 + p.a2;
    let m = 0.5 * p.l;
    let s = ratio_series("type 1 density series", ctrl, |j| {
        let j = j as f64;
        m * x * (ap + j) / ((j + 1.0) * (p.a1 + j))
    })?;
    Ok((ln_beta_pdf(x, p.a1, p.a2)? - m + s.ln_abs()).exp())
}

/// Type 2 density as the Poisson series of Beta(α₁, α₂+k) densities.
pub fn type2_pdf_series(x: f64, p: &Nc2BetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_x(x)?;
    let ap = p.a1 + p.a2;
    let m = 0.5 * p.l;
    let s = ratio_series("type 2 density series", ctrl, |k| {
        let k = k as f64;
        m * (1.0 - x) * (ap + k) / ((k + 1.0) * (p.a2 + k))
    })?;
    Ok((ln_beta_pdf(x, p.a1, p.a2)? - m + s.ln_abs()).exp())
}

pub fn type1_cdf(x: f64, p: &Nc1BetaParams, ctrl: SeriesControl) -> Result<f64> {
    cdf(x, &p.to_dncbeta(), ctrl)
}

pub fn type2_cdf(x: f64, p: &Nc2BetaParams, ctrl: SeriesControl) -> Result<f64> {
    cdf(x, &p.to_dncbeta(), ctrl)
}

/// Type 1 density at unit shapes: e^{-λ(1-x)/2}(1 + λx/2).
pub fn type1_pdf_11(x: f64, l: f64) -> f64 {
    (-0.5 * l * (1.0 - x)).exp() * (1.0 + 0.5 * l * x)
}

/// Type 2 density at unit shapes: e^{-λx/2}(1 + λ(1-x)/2).
pub fn type2_pdf_11(x: f64, l: f64) -> f64 {
    (-0.5 * l * x).exp() * (1.0 + 0.5 * l * (1.0 - x))
}

/// Type 1 distribution function at unit shapes.
pub fn type1_cdf_11(x: f64, l: f64) -> f64 {
    x * (-0.5 * l * (1.0 - x)).exp()
}

/// Type 2 distribution function at unit shapes.
pub fn type2_cdf_11(x: f64, l: f64) -> f64 {
    1.0 - (-0.5 * l * x).exp() * (1.0 - x)
}

/// Limits of the B″(1,1,λ₁,λ₂) density at 0 and at 1.
pub fn endpoint_limits_11(p: &DnCBetaParams) -> Result<(f64, f64)> {
    if p.a1 != 1.0 || p.a2 != 1.0 {
        return Err(Error::domain(
            "endpoint limits are available for a1 = a2 = 1 only",
        ));
    }
    Ok((
        (-0.5 * p.l1).exp() * (0.5 * p.l2 + 1.0),
        (-0.5 * p.l2).exp() * (0.5 * p.l1 + 1.0),
    ))
}

/// Endpoint limits at unit shapes: `[type 1, type 2]`, each as (at 0, at 1).
pub fn type12_endpoint_limits_11(l: f64) -> [(f64, f64); 2] {
    let e = (-0.5 * l).exp();
    let g = 0.5 * l + 1.0;
    [(e, g), (g, e)]
}

fn check_order(r: usize) -> Result<()> {
    if r == 0 || r > MAX_MOMENT {
        return Err(Error::domain(format!(
            "moment order must be in 1..={MAX_MOMENT}, got {r}"
        )));
    }
    Ok(())
}

// e^{-z} 1F1(a; b; z) without overflow
fn damped_1f1(a: f64, b: f64, z: f64, ctrl: SeriesControl) -> Result<f64> {
    Ok(kummer_1f1_scaled(a, b, z, ctrl)?
        .mul(Scaled::from_ln(-z))
        .value())
}

/// r-th raw moment as a finite sum of r+1 ₁F₁ terms.
pub fn moment(r: usize, p: &DnCBetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_order(r)?;
    p.require_shapes()?;
    let ap = p.a_plus();
    let half = 0.5 * p.l_plus();
    let m1 = 0.5 * p.l1;
    let mut s = 0.0;
    for i in 0..=r {
        if i > 0 && m1 == 0.0 {
            break;
        }
        let c = binomial(r, i) * pochhammer(ap, i) * m1.powi(i as i32)
            / (pochhammer(p.a1, i) * pochhammer(ap + r as f64, i));
        let fi = i as f64;
        s += c * damped_1f1(ap + fi, ap + r as f64 + fi, half, ctrl)?;
    }
    Ok(pochhammer(p.a1, r) / pochhammer(ap, r) * s)
}

/// Mean from the explicit first-order formula.
pub fn mean(p: &DnCBetaParams, ctrl: SeriesControl) -> Result<f64> {
    p.require_shapes()?;
    let (a1, ap, l1) = (p.a1, p.a_plus(), p.l1);
    let z = 0.5 * p.l_plus();
    let f0 = damped_1f1(ap, ap + 1.0, z, ctrl)?;
    let f1 = damped_1f1(ap + 1.0, ap + 2.0, z, ctrl)?;
    Ok(a1 / ap * (f0 + ap * 0.5 * l1 / (a1 * (ap + 1.0)) * f1))
}

/// Second raw moment from the explicit second-order formula.
pub fn second_moment(p: &DnCBetaParams, ctrl: SeriesControl) -> Result<f64> {
    p.require_shapes()?;
    let (a1, ap, l1) = (p.a1, p.a_plus(), p.l1);
    let z = 0.5 * p.l_plus();
    let f0 = damped_1f1(ap, ap + 2.0, z, ctrl)?;
    let f1 = damped_1f1(ap + 1.0, ap + 3.0, z, ctrl)?;
    let f2 = damped_1f1(ap + 2.0, ap + 4.0, z, ctrl)?;
    let pre = pochhammer(a1, 2) / pochhammer(ap, 2);
    Ok(pre
        * (f0
            + ap * l1 / (a1 * (ap + 2.0)) * f1
            + pochhammer(ap, 2) * (0.5 * l1).powi(2)
                / (pochhammer(a1, 2) * pochhammer(ap + 2.0, 2))
                * f2))
}

// Taylor coefficients in L of A(L)/L^3, D1(L)/L^4 and D2(L)/L^4 where
// A = L^2 - 4L + 8 - 8e^{-L/2}, C = L^2 e^{-L/2} - 2(1-e^{-L/2})(L+1-e^{-L/2}),
// D1 = 4L^2 + 8C, D2 = L((L-2)(L-8) - 2e^{-L/2}(L+8)) - 8C.
const TAYLOR_A: [f64; 25] = [
    0.16666666666666666,
    -0.020833333333333332,
    0.0020833333333333333,
    -0.00017361111111111112,
    1.240079365079365e-05,
    -7.750496031746032e-07,
    4.305831128747796e-08,
    -2.1529155643738975e-09,
    9.785979838063172e-11,
    -4.077491599192988e-12,
    1.5682659996896107e-13,
    -5.600949998891467e-15,
    1.8669833329638224e-16,
    -5.834322915511945e-18,
    1.7159773280917484e-19,
    -4.7666036891437455e-21,
    1.254369391879933e-22,
    -3.1359234796998328e-24,
    7.466484475475793e-26,
    -1.696928289880862e-27,
    3.688974543219265e-29,
    -7.685363631706802e-31,
    1.5370727263413605e-32,
    -2.955909089118001e-34,
    5.47390572058889e-36,
];
const TAYLOR_D1: [f64; 25] = [
    0.08333333333333333,
    0.0,
    -0.004861111111111111,
    0.001388888888888889,
    -0.0002449156746031746,
    3.306878306878307e-05,
    -3.7116264329806e-06,
    3.616898148148148e-07,
    -3.1429305246579554e-08,
    2.4791148923093367e-09,
    -1.7974568736442496e-10,
    1.2089090477607342e-11,
    -7.594654825580209e-13,
    4.4807599991131736e-14,
    -2.493562921109146e-15,
    1.3136759767280162e-16,
    -6.571979923794777e-18,
    3.130475932626526e-19,
    -1.4231872846417567e-20,
    6.188358087537527e-22,
    -2.5786174914593425e-23,
    1.0314766313459007e-24,
    -3.967280123432448e-26,
    1.4693755767662188e-27,
    -5.247794275902667e-29,
];
const TAYLOR_D2: [f64; 25] = [
    0.0,
    0.0,
    0.0038194444444444443,
    -0.0012152777777777778,
    0.00022631448412698414,
    -3.1518683862433863e-05,
    3.603980654761905e-06,
    -3.552310681216931e-07,
    3.108679595224734e-08,
    -2.462804925912565e-09,
    1.7903996766456463e-10,
    -1.2061085727612885e-11,
    7.584386417248908e-13,
    -4.477259405363867e-14,
    2.4924475358458862e-15,
    -1.3133423144697764e-16,
    6.5710391467508676e-18,
    -3.13022505874815e-19,
    1.4231238195237153e-20,
    -6.188205363991438e-22,
    2.5785824462011818e-23,
    -1.0314689459822692e-24,
    3.9672639841688217e-26,
    -1.4693723252662209e-27,
    5.247787980911089e-29,
];

const TAYLOR_CUTOFF: f64 = 1.0;

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

fn a_over_l3(l: f64) -> f64 {
    if l.abs() < TAYLOR_CUTOFF {
        return horner(&TAYLOR_A, l);
    }
    let e = (-0.5 * l).exp();
    (l * l - 4.0 * l + 8.0 - 8.0 * e) / (l * l * l)
}

fn c_term(l: f64) -> f64 {
    let e = (-0.5 * l).exp();
    l * l * e - 2.0 * (1.0 - e) * (l + 1.0 - e)
}

fn d1_over_l4(l: f64) -> f64 {
    if l.abs() < TAYLOR_CUTOFF {
        return horner(&TAYLOR_D1, l);
    }
    (4.0 * l * l + 8.0 * c_term(l)) / l.powi(4)
}

fn d2_over_l4(l: f64) -> f64 {
    if l.abs() < TAYLOR_CUTOFF {
        return horner(&TAYLOR_D2, l);
    }
    let e = (-0.5 * l).exp();
    let b = (l - 2.0) * (l - 8.0) - 2.0 * e * (l + 8.0);
    (l * b - 8.0 * c_term(l)) / l.powi(4)
}

/// Closed-form B″(1,1,λ₁,λ₂) mean for any real λ's; used by moment matching.
pub fn mean_11_raw(l1: f64, l2: f64) -> f64 {
    0.5 + 0.5 * (l1 - l2) * a_over_l3(l1 + l2)
}

/// Closed-form B″(1,1,λ₁,λ₂) variance for any real λ's; used by moment matching.
pub fn var_11_raw(l1: f64, l2: f64) -> f64 {
    let l = l1 + l2;
    if l == 0.0 {
        // the p-term vanishes like L^2 * (l1 l2 / L^2)
        return TAYLOR_D1[0] + 4.0 * l1 * l2 * TAYLOR_D2[2];
    }
    let p = l1 * l2 / (l * l);
    d1_over_l4(l) + 4.0 * p * d2_over_l4(l)
}

fn check_l(l1: f64, l2: f64) -> Result<()> {
    nonneg("l1", l1)?;
    nonneg("l2", l2)
}

/// Mean of B″(1,1,λ₁,λ₂); λ⁺ = 0 gives the uniform mean 1/2.
pub fn mean_11(l1: f64, l2: f64) -> Result<f64> {
    check_l(l1, l2)?;
    Ok(mean_11_raw(l1, l2))
}

/// Variance of B″(1,1,λ₁,λ₂); λ⁺ = 0 gives the uniform variance 1/12.
pub fn var_11(l1: f64, l2: f64) -> Result<f64> {
    check_l(l1, l2)?;
    Ok(var_11_raw(l1, l2))
}

/// (mean of type 1, mean of type 2, common variance) at unit shapes.
pub fn mean_type12_11(l: f64) -> (f64, f64, f64) {
    let d = 0.5 * l * a_over_l3(l);
    (0.5 + d, 0.5 - d, d1_over_l4(l))
}

/// Type 1 moment through ₂F₂(α₁+r, α⁺; α₁, α⁺+r; λ/2).
pub fn type1_moment_2f2(r: usize, p: &Nc1BetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_order(r)?;
    let ap = p.a1 + p.a2;
    let rf = r as f64;
    let z = 0.5 * p.l;
    let f = generalized_2f2(p.a1 + rf, ap, p.a1, ap + rf, z, ctrl)?;
    Ok(pochhammer(p.a1, r) / pochhammer(ap, r) * (-z).exp() * f)
}

/// Type 1 moment through the finite ₁F₁ sum.
pub fn type1_moment(r: usize, p: &Nc1BetaParams, ctrl: SeriesControl) -> Result<f64> {
    moment(r, &p.to_dncbeta(), ctrl)
}

/// Type 2 moment through ₁F₁(α⁺; α⁺+r; λ/2).
pub fn type2_moment(r: usize, p: &Nc2BetaParams, ctrl: SeriesControl) -> Result<f64> {
    check_order(r)?;
    let ap = p.a1 + p.a2;
    Ok(pochhammer(p.a1, r) / pochhammer(ap, r) * damped_1f1(ap, ap + r as f64, 0.5 * p.l, ctrl)?)
}

/// The mean of B″ computed three ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanDecomposition {
    /// Direct first moment.
    pub direct: f64,
    /// λ₁/λ⁺ E(X′₁) + λ₂/λ⁺ E(X′₂) with type 1/2 variables at non-centrality λ⁺.
    pub via_types: f64,
    /// Convex combination of the beta mean and λ₁/λ⁺.
    pub via_beta_mix: f64,
}

pub fn mean_decomposition_check(
    p: &DnCBetaParams,
    ctrl: SeriesControl,
) -> Result<MeanDecomposition> {
    p.require_shapes()?;
    let lp = p.l_plus();
    let theta = p
        .theta1()
        .ok_or_else(|| Error::domain("mean decomposition needs l1 + l2 > 0"))?;
    let direct = moment(1, p, ctrl)?;
    let t1 = type1_moment(1, &Nc1BetaParams::new(p.a1, p.a2, lp)?, ctrl)?;
    let t2 = type2_moment(1, &Nc2BetaParams::new(p.a1, p.a2, lp)?, ctrl)?;
    let ap = p.a_plus();
    let g = damped_1f1(ap, ap + 1.0, 0.5 * lp, ctrl)?;
    Ok(MeanDecomposition {
        direct,
        via_types: theta * t1 + (1.0 - theta) * t2,
        via_beta_mix: p.a1 / ap * g + theta * (1.0 - g),
    })
}

/// G3B parameters of the Patnaik-type approximation to B″.
pub fn patnaik_g3b(p: &DnCBetaParams) -> G3BParams {
    let side = |a: f64, l: f64| {
        if l == 0.0 {
            return (a, 1.0);
        }
        let nu = (2.0 * a + l).powi(2) / (2.0 * (a + l));
        let rho = 2.0 * (a + l) / (2.0 * a + l);
        (0.5 * nu, rho)
    };
    let (b1, r1) = side(p.a1, p.l1);
    let (b2, r2) = side(p.a2, p.l2);
    G3BParams {
        b1,
        b2,
        gamma: r2 / r1,
    }
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
    fn validation() {
        assert!(DnCBetaParams::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(DnCBetaParams::new(1.0, 0.0, 1.0, 0.0).is_err());
        assert!(DnCBetaParams::new(-1.0, 1.0, 1.0, 1.0).is_err());
        let p = DnCBetaParams::new(0.0, 1.0, 2.0, 0.0).unwrap();
        assert!(pdf(0.5, &p, c()).is_err());
        let q = DnCBetaParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert!(pdf(0.0, &q, c()).is_err());
        assert!(cdf(1.0, &q, c()).is_err());
        assert!(moment(9, &q, c()).is_err());
        assert!(endpoint_limits_11(&DnCBetaParams::new(2.0, 1.0, 1.0, 1.0).unwrap()).is_err());
        assert!(G3BParams::new(1.0, 1.0, 0.0).is_err());
        assert!(mean_11(-1.0, 2.0).is_err());
    }

    #[test]
    fn central_reduces_to_beta() {
        let p = DnCBetaParams::new(2.0, 3.0, 0.0, 0.0).unwrap();
        let b = ln_beta_pdf(0.3, 2.0, 3.0).unwrap().exp();
        assert!(rel(pdf(0.3, &p, c()).unwrap(), b) < 1e-15);
        assert!(rel(pdf_series(0.3, &p, c()).unwrap(), b) < 1e-15);
        assert!(
            rel(
                cdf(0.3, &p, c()).unwrap(),
                reg_inc_beta(0.3, 2.0, 3.0).unwrap()
            ) < 1e-15
        );
        assert!(rel(moment(1, &p, c()).unwrap(), 0.4) < 1e-15);
        assert!(rel(moment(2, &p, c()).unwrap(), 6.0 / 30.0) < 1e-15);
    }

    #[test]
    fn type1_unit_shape_closed_form() {
        let p = Nc1BetaParams::new(1.0, 1.0, 3.0).unwrap();
        for x in [0.1, 0.5, 0.9] {
            assert!(rel(type1_pdf(x, &p, c()).unwrap(), type1_pdf_11(x, 3.0)) < 1e-14);
            assert!(rel(type1_pdf_series(x, &p, c()).unwrap(), type1_pdf_11(x, 3.0)) < 1e-14);
            let d = pdf(x, &p.to_dncbeta(), c()).unwrap();
            assert!(rel(d, type1_pdf_11(x, 3.0)) < 1e-14);
        }
    }

    #[test]
    fn equal_noncentrality_mean_and_variance() {
        for l in [0.5, 3.0, 20.0] {
            assert!((mean_11(l, l).unwrap() - 0.5).abs() < 1e-15);
            let v = var_11(l, l).unwrap();
            let lam: f64 = l;
            let simple = 1.0 / (lam * lam)
                + ((lam - 1.0) * (lam - 4.0) - (lam + 4.0) * (-lam).exp()) / (2.0 * lam.powi(3));
            assert!(rel(v, simple) < 1e-9, "{l} {v} {simple}");
        }
        assert_eq!(mean_11(0.0, 0.0).unwrap(), 0.5);
        assert_eq!(var_11(0.0, 0.0).unwrap(), 1.0 / 12.0);
        assert!(mean_11(5.0, 1.0).unwrap() > 0.5);
    }

    #[test]
    fn closed_forms_continuous_at_cutoff() {
        for (l1, l2) in [(0.3, 0.7), (0.1, 0.9), (0.999_999_9, 0.0)] {
            let below = (mean_11_raw(l1, l2), var_11_raw(l1, l2));
            let s = 1.000_000_2;
            let above = (mean_11_raw(l1 * s, l2 * s), var_11_raw(l1 * s, l2 * s));
            assert!((below.0 - above.0).abs() < 1e-7);
            assert!((below.1 - above.1).abs() < 1e-7);
        }
    }

    #[test]
    fn patnaik_neutral() {
        let g = patnaik_g3b(&DnCBetaParams::new(2.5, 0.7, 0.0, 0.0).unwrap());
        assert_eq!((g.b1(), g.b2(), g.gamma()), (2.5, 0.7, 1.0));
        let g = patnaik_g3b(&DnCBetaParams::new(1.0, 1.0, 2.0, 2.0).unwrap());
        assert!((g.b1() - 4.0 / 3.0).abs() < 1e-15 && g.gamma() == 1.0);
    }
}
