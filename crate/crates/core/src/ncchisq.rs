//! Non-central chi-squared distribution χ′²_g(λ).

use crate::error::{Error, Result};
use crate::sampling::RandomStream;
use crate::specfun::{
    binomial, ln_gamma, poch_derivative, pochhammer, poisson_bounded_sum, reg_lower_gamma,
    stirling1_unsigned, stirling2, SeriesControl,
};

/// Highest moment order offered.
pub const MAX_MOMENT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NcChiSqParams {
    g: f64,
    lambda: f64,
}

impl NcChiSqParams {
    /// `g = 0` is the purely non-central case and needs `lambda > 0`.
    pub fn new(g: f64, lambda: f64) -> Result<Self> {
        if !(g >= 0.0) || !g.is_finite() {
            return Err(Error::domain(format!(
                "degrees of freedom must be >= 0, got {g}"
            )));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "non-centrality must be >= 0, got {lambda}"
            )));
        }
        if g == 0.0 && lambda == 0.0 {
            return Err(Error::domain("g = lambda = 0 is degenerate at zero"));
        }
        Ok(NcChiSqParams { g, lambda })
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    fn require_df(&self) -> Result<()> {
        if self.g > 0.0 {
            Ok(())
        } else {
            Err(Error::domain("this operation needs g > 0"))
        }
    }
}

/// Effective degrees of freedom and scale of the Patnaik approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatnaikParams {
    pub nu: f64,
    pub rho: f64,
}

fn check_y(y: f64) -> Result<()> {
    if !(y > 0.0) || y.is_nan() {
        return Err(Error::domain(format!("y must be > 0, got {y}")));
    }
    Ok(())
}

/// Density at `y`, summing the Poisson mixture outward from its largest term.
pub fn pdf(y: f64, p: &NcChiSqParams, ctrl: SeriesControl) -> Result<f64> {
    check_y(y)?;
    p.require_df()?;
    let h = 0.5 * p.g;
    let mu = 0.5 * p.lambda;
    if y.is_infinite() {
        return Ok(0.0);
    }
    let ln_term = |i: f64| -> Result<f64> {
        let lw = if mu > 0.0 {
            -mu + i * mu.ln() - ln_gamma(i + 1.0)?
        } else {
            0.0
        };
        Ok(lw + (h + i - 1.0) * y.ln()
            - 0.5 * y
            - (h + i) * std::f64::consts::LN_2
            - ln_gamma(h + i)?)
    };
    if mu == 0.0 {
        return Ok(ln_term(0.0)?.exp());
    }
    // ratio s_{i+1}/s_i = c / ((i+1)(h+i))
    let c = 0.5 * mu * y;
    let root = 0.5 * (-(h - 1.0) + ((h - 1.0) * (h - 1.0) + 4.0 * c).sqrt());
    let mode = root.floor().max(0.0);
    let ratio = |i: f64| c / ((i + 1.0) * (h + i));

    let mut sum = 1.0;
    let mut terms = 1;
    let mut t = 1.0;
    let mut i = mode;
    loop {
        t *= ratio(i);
        i += 1.0;
        let next = sum + t;
        terms += 1;
        let good = ctrl.is_good(sum, next);
        sum = next;
        if good {
            break;
        }
        if terms >= ctrl.maxiter {
            return Err(conv("ncchisq pdf", sum, terms));
        }
    }
    let mut t = 1.0;
    let mut i = mode;
    while i > 0.0 {
        i -= 1.0;
        t /= ratio(i);
        let next = sum + t;
        terms += 1;
        let good = ctrl.is_good(sum, next);
        sum = next;
        if good {
            break;
        }
        if terms >= ctrl.maxiter {
            return Err(conv("ncchisq pdf", sum, terms));
        }
    }
    Ok(sum * ln_term(mode)?.exp())
}

fn conv(series: &'static str, partial_sum: f64, terms: usize) -> Error {
    Error::Convergence {
        series,
        partial_sum,
        terms,
    }
}

/// Distribution function: Poisson mixture of central chi-squared CDFs.
pub fn cdf(y: f64, p: &NcChiSqParams, ctrl: SeriesControl) -> Result<f64> {
    check_y(y)?;
    p.require_df()?;
    let h = 0.5 * p.g;
    poisson_bounded_sum("ncchisq cdf", 0.5 * p.lambda, ctrl, |i| {
        reg_lower_gamma(h + i as f64, 0.5 * y)
    })
}

fn check_order(r: usize) -> Result<()> {
    if r == 0 || r > MAX_MOMENT {
        return Err(Error::domain(format!(
            "moment order must be in 1..={MAX_MOMENT}, got {r}"
        )));
    }
    Ok(())
}

/// r-th raw moment from the binomial sum with Pochhammer ratios.
pub fn moment_literature(r: usize, p: &NcChiSqParams) -> Result<f64> {
    check_order(r)?;
    p.require_df()?;
    let h = 0.5 * p.g;
    let mu = 0.5 * p.lambda;
    let pr = pochhammer(h, r);
    let s: f64 = (0..=r)
        .map(|j| binomial(r, j) * pr / pochhammer(h, j) * mu.powi(j as i32))
        .sum();
    Ok(2f64.powi(r as i32) * s)
}

/// r-th raw moment from Stirling numbers and derivatives of (g/2)_r.
pub fn moment_stirling(r: usize, p: &NcChiSqParams) -> Result<f64> {
    check_order(r)?;
    p.require_df()?;
    let h = 0.5 * p.g;
    let mu = 0.5 * p.lambda;
    let mut s = 0.0;
    let mut fact = 1.0;
    for i in 0..=r {
        if i > 0 {
            fact *= i as f64;
        }
        let d = poch_derivative(h, r, i) / fact;
        let mut inner = 0.0;
        for j in 0..=i {
            inner += stirling2(i, j)? as f64 * mu.powi(j as i32);
        }
        s += d * inner;
    }
    Ok(2f64.powi(r as i32) * s)
}

/// r-th raw moment of the zero-degrees-of-freedom case.
pub fn moment_purely_noncentral(r: usize, lambda: f64) -> Result<f64> {
    check_order(r)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain(format!("lambda must be > 0, got {lambda}")));
    }
    let mu = 0.5 * lambda;
    let mut s = 0.0;
    for i in 0..=r {
        let c = stirling1_unsigned(r, i)? as f64;
        let mut inner = 0.0;
        for j in 0..=i {
            inner += stirling2(i, j)? as f64 * mu.powi(j as i32);
        }
        s += c * inner;
    }
    Ok(2f64.powi(r as i32) * s)
}

/// Patnaik's scaled central approximation: Y′ ≈ ρ χ²_ν.
pub fn patnaik_params(p: &NcChiSqParams) -> PatnaikParams {
    let (g, l) = (p.g, p.lambda);
    if l == 0.0 {
        return PatnaikParams { nu: g, rho: 1.0 };
    }
    PatnaikParams {
        nu: (g + l) * (g + l) / (g + 2.0 * l),
        rho: (g + 2.0 * l) / (g + l),
    }
}

/// One draw via the mixture route.
pub(crate) fn draw(p: &NcChiSqParams, rng: &mut RandomStream) -> f64 {
    let m = rng.poisson(0.5 * p.lambda);
    rng.chisq(p.g + 2.0 * m as f64)
}

/// Draws through M ~ Poisson(λ/2) followed by a central χ² with g+2M df.
pub fn sample(n: usize, p: &NcChiSqParams, rng: &mut RandomStream) -> Vec<f64> {
    (0..n).map(|_| draw(p, rng)).collect()
}

/// Draws as a central χ²_g plus a Poisson-stopped sum of χ²_2 variables.
pub fn sample_sum_representation(n: usize, p: &NcChiSqParams, rng: &mut RandomStream) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let central = rng.chisq(p.g);
            let m = rng.poisson(0.5 * p.lambda);
            central + (0..m).map(|_| rng.chisq(2.0)).sum::<f64>()
        })
        .collect()
}
