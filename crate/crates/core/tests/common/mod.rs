//! Oracles shared by the integration tests. Nothing here calls into the
//! numerical kernels under test.
#![allow(dead_code)]

use ncbeta_core::RandomStream;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Adaptive Gauss–Kronrod 7/15 on [a, b] to absolute tolerance `tol`.
pub fn integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let mut stack = vec![(a, b, tol)];
    let mut total = 0.0;
    while let Some((lo, hi, t)) = stack.pop() {
        let (v, err) = gk15(&mut f, lo, hi);
        if err <= t || hi - lo < 1e-12 * (b - a).abs().max(1e-300) {
            total += v;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, 0.5 * t));
            stack.push((mid, hi, 0.5 * t));
        }
    }
    total
}

/// Integral over (0, 1) with the interval split away from both endpoints so
/// integrable endpoint singularities are resolved by refinement.
pub fn integrate_unit(f: impl FnMut(f64) -> f64, tol: f64) -> f64 {
    integrate(f, 0.0, 1.0, tol)
}

pub fn ln_factorial(n: u64) -> f64 {
    (1..=n).map(|k| (k as f64).ln()).sum()
}

/// ln Γ for positive arguments by shifting and the Stirling series.
pub fn ln_gamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 15.0 {
        acc -= x.ln();
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    let series = (1.0 / 12.0 - z * (1.0 / 360.0 - z * (1.0 / 1260.0 - z / 1680.0))) / x;
    acc + (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

pub fn ln_poisson(k: u64, mean: f64) -> f64 {
    if mean == 0.0 {
        return if k == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    k as f64 * mean.ln() - mean - ln_factorial(k)
}

/// Brute-force Poisson-mixture B″ density, summed in log space over j, k < terms.
pub fn dncbeta_pdf_bruteforce(x: f64, a1: f64, a2: f64, l1: f64, l2: f64, terms: u64) -> f64 {
    let mut s = 0.0;
    for j in 0..terms {
        for k in 0..terms {
            let (p, q) = (a1 + j as f64, a2 + k as f64);
            let ln_b = ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q);
            let ln_t = ln_poisson(j, 0.5 * l1)
                + ln_poisson(k, 0.5 * l2)
                + (p - 1.0) * x.ln()
                + (q - 1.0) * (1.0 - x).ln()
                - ln_b;
            s += ln_t.exp();
        }
    }
    s
}

/// Raw moment E[Y^r] of the non-central chi-squared by direct Poisson mixing
/// of the central moments 2^r (h+i)_r.
pub fn ncchisq_moment_bruteforce(r: usize, g: f64, lambda: f64, terms: u64) -> f64 {
    let h = 0.5 * g;
    (0..terms)
        .map(|i| {
            let rising: f64 = (0..r).map(|k| h + i as f64 + k as f64).product();
            ln_poisson(i, 0.5 * lambda).exp() * 2f64.powi(r as i32) * rising
        })
        .sum()
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
    while i < a.len() && j < b.len() {
        let v = a[i].min(b[j]);
        while i < a.len() && a[i] <= v {
            i += 1;
        }
        while j < b.len() && b[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Critical value of the two-sample KS statistic at level 0.01.
pub fn ks_critical_01(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    1.628 * ((n + m) / (n * m)).sqrt()
}

/// Mean and standard error of the mean.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

/// CH(1,1,δ) draws by inverting its distribution function.
pub fn sample_ch11(n: usize, delta: f64, rng: &mut RandomStream) -> Vec<f64> {
    (0..n)
        .map(|_| {
            let u = rng.uniform();
            if delta.abs() < 1e-12 {
                u
            } else {
                -(-u * (-(-delta).exp_m1())).ln_1p() / delta
            }
        })
        .collect()
}

/// GH(1,1,λ,z) draws by bisection on its distribution function.
pub fn sample_gh11(n: usize, lam: f64, z: f64, rng: &mut RandomStream) -> Vec<f64> {
    let cum = |x: f64| {
        if (lam - 1.0).abs() < 1e-12 {
            (z * x).ln_1p()
        } else {
            (((1.0 - lam) * (z * x).ln_1p()).exp() - 1.0) / (1.0 - lam)
        }
    };
    let total = cum(1.0);
    (0..n)
        .map(|_| {
            if z == 0.0 {
                return rng.uniform();
            }
            let u = rng.uniform() * total;
            let (mut lo, mut hi) = (0.0, 1.0);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (cum(mid) - u) * total.signum() < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
