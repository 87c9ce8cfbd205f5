use super::incomplete::ln_beta;
use super::quad::tanh_sinh;
use super::{ratio_series, Scaled, SeriesControl};
use crate::error::{Error, Result};

fn is_nonpositive_int(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

fn check_lower(name: &str, b: f64) -> Result<()> {
    if is_nonpositive_int(b) || !b.is_finite() {
        return Err(Error::domain(format!(
            "{name}: lower parameter {b} must not be zero or a negative integer"
        )));
    }
    Ok(())
}

/// Kummer's ₁F₁(a; b; z), kept in scaled form.
///
/// Negative arguments go through ₁F₁(a;b;z) = e^z ₁F₁(b-a;b;-z).
pub fn kummer_1f1_scaled(a: f64, b: f64, z: f64, ctrl: SeriesControl) -> Result<Scaled> {
    check_lower("1F1", b)?;
    if !a.is_finite() || !z.is_finite() {
        return Err(Error::domain("1F1: non-finite argument"));
    }
    if z == 0.0 {
        return Ok(Scaled::ONE);
    }
    if z < 0.0 && !is_nonpositive_int(a) {
        let s = series_1f1(b - a, b, -z, ctrl)?;
        return Ok(s.mul(Scaled::from_ln(z)));
    }
    series_1f1(a, b, z, ctrl)
}

fn series_1f1(a: f64, b: f64, z: f64, ctrl: SeriesControl) -> Result<Scaled> {
    ratio_series("1F1", ctrl, |k| {
        let k = k as f64;
        (a + k) / (b + k) * z / (k + 1.0)
    })
}

/// Kummer's confluent hypergeometric function ₁F₁(a; b; z).
pub fn kummer_1f1(a: f64, b: f64, z: f64, ctrl: SeriesControl) -> Result<f64> {
    Ok(kummer_1f1_scaled(a, b, z, ctrl)?.value())
}

/// ln ₁F₁(a; b; z); the function value must be positive.
pub fn ln_kummer_1f1(a: f64, b: f64, z: f64, ctrl: SeriesControl) -> Result<f64> {
    let s = kummer_1f1_scaled(a, b, z, ctrl)?;
    if !(s.mant > 0.0) {
        return Err(Error::domain(format!(
            "ln 1F1({a}; {b}; {z}) undefined: value is not positive"
        )));
    }
    Ok(s.ln_abs())
}

/// ₂F₂(a1, a2; b1, b2; z).
pub fn generalized_2f2(
    a1: f64,
    a2: f64,
    b1: f64,
    b2: f64,
    z: f64,
    ctrl: SeriesControl,
) -> Result<f64> {
    check_lower("2F2", b1)?;
    check_lower("2F2", b2)?;
    let s = ratio_series("2F2", ctrl, |k| {
        let k = k as f64;
        (a1 + k) * (a2 + k) / ((b1 + k) * (b2 + k)) * z / (k + 1.0)
    })?;
    Ok(s.value())
}

/// Gauss hypergeometric ₂F₁(a, b; c; z) for z < 1.
///
/// |z| < 0.9 uses the series. For -9 < z <= -0.9 the Pfaff transformation
/// maps the argument into [0.47, 0.9). Outside those ranges the Euler
/// integral is evaluated by quadrature when c > b > 0 (or c > a > 0);
/// failing that the slowly convergent series is attempted under `ctrl`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64, ctrl: SeriesControl) -> Result<f64> {
    check_lower("2F1", c)?;
    if !(z < 1.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!(
            "2F1: argument must satisfy z < 1, got {z}"
        )));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    if z.abs() < 0.9 {
        return series_2f1(a, b, c, z, ctrl);
    }
    let w = z / (z - 1.0);
    if z < 0.0 && w < 0.9 {
        return Ok((1.0 - z).powf(-a) * series_2f1(a, c - b, c, w, ctrl)?);
    }
    if c > b && b > 0.0 {
        return euler_integral(a, b, c, z);
    }
    if c > a && a > 0.0 {
        return euler_integral(b, a, c, z);
    }
    if z < 0.0 {
        Ok((1.0 - z).powf(-a) * series_2f1(a, c - b, c, w, ctrl)?)
    } else {
        series_2f1(a, b, c, z, ctrl)
    }
}

fn series_2f1(a: f64, b: f64, c: f64, z: f64, ctrl: SeriesControl) -> Result<f64> {
    let s = ratio_series("2F1", ctrl, |k| {
        let k = k as f64;
        (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
    })?;
    Ok(s.value())
}

// Γ(c)/(Γ(b)Γ(c-b)) ∫ t^{b-1} (1-t)^{c-b-1} (1-zt)^{-a} dt
fn euler_integral(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let lnb = ln_beta(b, c - b)?;
    let omz = 1.0 - z;
    tanh_sinh(
        |t, s| {
            let base = s + t * omz;
            ((b - 1.0) * t.ln() + (c - b - 1.0) * s.ln() - a * base.ln() - lnb).exp()
        },
        1e-15,
    )
}

/// Humbert's Ψ₂[α; γ, γ′; x, y] in scaled form.
///
/// Outer series over j of (α)_j/(γ)_j x^j/j! · ₁F₁(α+j; γ′; y).
pub fn humbert_psi2_scaled(
    alpha: f64,
    g1: f64,
    g2: f64,
    x: f64,
    y: f64,
    ctrl: SeriesControl,
) -> Result<Scaled> {
    if !(alpha > 0.0 && g1 > 0.0 && g2 > 0.0) {
        return Err(Error::domain(format!(
            "Psi2 needs alpha, gamma, gamma' > 0, got ({alpha}, {g1}, {g2})"
        )));
    }
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!(
            "Psi2 needs x, y >= 0, got ({x}, {y})"
        )));
    }
    let mut sum = kummer_1f1_scaled(alpha, g2, y, ctrl)?;
    if x == 0.0 {
        return Ok(sum);
    }
    let mut coef = Scaled::ONE;
    let mut prev_ln = sum.ln_abs();
    for j in 0..ctrl.maxiter {
        let jf = j as f64;
        coef = coef.mul_f64((alpha + jf) / (g1 + jf) * x / (jf + 1.0));
        let inner = kummer_1f1_scaled(alpha + jf + 1.0, g2, y, ctrl)?;
        let term = coef.mul(inner);
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
        series: "Psi2",
        partial_sum: sum.value(),
        terms: ctrl.maxiter,
    })
}

/// Humbert's confluent hypergeometric function Ψ₂[α; γ, γ′; x, y].
pub fn humbert_psi2(
    alpha: f64,
    g1: f64,
    g2: f64,
    x: f64,
    y: f64,
    ctrl: SeriesControl,
) -> Result<f64> {
    Ok(humbert_psi2_scaled(alpha, g1, g2, x, y, ctrl)?.value())
}

/// ln Ψ₂[α; 1, 1; x, y] as a single series in the total degree M.
///
/// The degree-M part Σⱼ C(M,j)² xʲ y^{M-j} / M! satisfies a three-term
/// recurrence, so each term costs O(1).
pub fn ln_humbert_psi2_unit(alpha: f64, x: f64, y: f64, ctrl: SeriesControl) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("Psi2 needs alpha > 0, got {alpha}")));
    }
    if !(x >= 0.0 && y >= 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!(
            "Psi2 needs x, y >= 0, got ({x}, {y})"
        )));
    }
    let (u, w2) = (x + y, (x - y) * (x - y));
    // s_{M-1}, s_M and the Pochhammer ratio (α)_M / M!, all sharing one scale
    let (mut prev, mut cur, mut poch) = (0.0, 1.0, 1.0);
    let mut ln_scale = 0.0;
    let mut sum = 1.0;
    let mut last = 1.0;
    for m in 0..ctrl.maxiter {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0) * u * cur - w2 * prev) / ((mf + 1.0) * (mf + 1.0));
        prev = cur;
        cur = next;
        poch *= (alpha + mf) / (mf + 1.0);
        let term = poch * cur;
        let new_sum = sum + term;
        let good = ctrl.is_good(sum, new_sum) && term <= last;
        last = term;
        sum = new_sum;
        if good || term == 0.0 {
            return Ok(sum.ln() + ln_scale);
        }
        if sum > 1e250 {
            let k = 1e-250;
            prev *= k;
            cur *= k;
            sum *= k;
            last *= k;
            ln_scale += 250.0 * std::f64::consts::LN_10;
        }
    }
    Err(Error::Convergence {
        series: "Psi2",
        partial_sum: (sum.ln() + ln_scale).exp(),
        terms: ctrl.maxiter,
    })
}

/// ln Ψ₂[α; γ, γ′; x, y].
pub fn ln_humbert_psi2(
    alpha: f64,
    g1: f64,
    g2: f64,
    x: f64,
    y: f64,
    ctrl: SeriesControl,
) -> Result<f64> {
    Ok(humbert_psi2_scaled(alpha, g1, g2, x, y, ctrl)?.ln_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn kummer_identities() {
        let c = SeriesControl::default();
        assert!(rel(kummer_1f1(2.5, 2.5, 3.1, c).unwrap(), 3.1f64.exp()) < 1e-15);
        assert!(rel(kummer_1f1(2.5, 2.5, -3.1, c).unwrap(), (-3.1f64).exp()) < 1e-15);
        let v = kummer_1f1(2.0, 1.0, 0.8, c).unwrap();
        assert!(rel(v, 0.8f64.exp() * 1.8) < 1e-15);
        assert!((ln_kummer_1f1(2.0, 1.0, 0.8, c).unwrap() - (0.8 + 1.8f64.ln())).abs() < 1e-15);
        assert!((ln_kummer_1f1(1.5, 1.5, 900.0, c).unwrap() - 900.0).abs() < 1e-12);
        assert!(kummer_1f1(1.0, -2.0, 1.0, c).is_err());
        // terminating series: 1F1(-2; 1; z) = 1 - 2z + z^2/2
        assert!(rel(kummer_1f1(-2.0, 1.0, 3.0, c).unwrap(), 1.0 - 6.0 + 4.5) < 1e-15);
    }

    #[test]
    fn gauss_branches() {
        let c = SeriesControl::default();
        assert_eq!(gauss_2f1(1.0, 2.0, 3.0, 0.0, c).unwrap(), 1.0);
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5, c).unwrap();
        assert!(rel(v, 2.0 * 2f64.ln()) < 1e-15);
        // 2F1(1,1;2;z) = -ln(1-z)/z across every branch
        for z in [-0.95, -5.0, -30.0, -1e4, 0.93, 0.999] {
            let v = gauss_2f1(1.0, 1.0, 2.0, z, c).unwrap();
            let exact = -(-z).ln_1p() / z;
            assert!(rel(v, exact) < 1e-13, "z={z} {v} {exact}");
        }
        assert!(gauss_2f1(1.0, 1.0, 2.0, 1.0, c).is_err());
        assert!(gauss_2f1(1.0, 1.0, -1.0, 0.3, c).is_err());
    }

    #[test]
    fn psi2_reductions() {
        let c = SeriesControl::default();
        assert_eq!(humbert_psi2(2.0, 1.0, 1.0, 0.0, 0.0, c).unwrap(), 1.0);
        let a = humbert_psi2(2.0, 1.5, 3.0, 0.0, 1.2, c).unwrap();
        assert!(rel(a, kummer_1f1(2.0, 3.0, 1.2, c).unwrap()) < 1e-15);
        let b = humbert_psi2(2.0, 1.5, 3.0, 1.2, 0.0, c).unwrap();
        assert!(rel(b, kummer_1f1(2.0, 1.5, 1.2, c).unwrap()) < 1e-13);
        assert!(humbert_psi2(2.0, 0.0, 1.0, 0.1, 0.1, c).is_err());
        assert!(humbert_psi2(2.0, 1.0, 1.0, -0.1, 0.1, c).is_err());
    }

    #[test]
    fn psi2_reports_non_convergence() {
        let c = SeriesControl::new(0.0, 5).unwrap();
        match humbert_psi2(2.0, 1.0, 1.0, 30.0, 0.0, c) {
            Err(Error::Convergence { series, .. }) => assert_eq!(series, "Psi2"),
            other => panic!("{other:?}"),
        }
    }
    #[test]
    fn psi2_unit_matches_general() {
        let c = SeriesControl::default();
        for &alpha in &[0.5, 2.0, 3.7] {
            for &(x, y) in &[
                (0.0, 0.0),
                (0.3, 0.0),
                (0.0, 2.5),
                (1.2, 1.2),
                (4.0, 0.7),
                (35.0, 60.0),
            ] {
                let a = ln_humbert_psi2_unit(alpha, x, y, c).unwrap();
                let b = ln_humbert_psi2(alpha, 1.0, 1.0, x, y, c).unwrap();
                assert!(
                    (a - b).abs() <= 1e-13 * b.abs().max(1.0),
                    "{alpha} {x} {y}: {a} {b}"
                );
            }
        }
        let big = ln_humbert_psi2_unit(2.0, 150.0, 90.0, c).unwrap();
        let gen = ln_humbert_psi2(2.0, 1.0, 1.0, 150.0, 90.0, c).unwrap();
        assert!((big - gen).abs() < 1e-11 * gen, "{big} {gen}");
    }
}
