use super::{Dataset, Model, MomResult};
use crate::altmodels::{ch_mean_11, g3b_mean_11, gh_moments_11};
use crate::error::{Error, Result};
use crate::ncbeta::{mean_11_raw, mean_type12_11, var_11_raw};

const START_GRID: [f64; 5] = [0.25, 1.0, 4.0, 16.0, 64.0];
const NEWTON_ITERS: usize = 20;
const MAX_HALVINGS: usize = 30;

/// Dispatches to the moment matcher of `model`.
pub fn mom_fit(model: Model, d: &Dataset) -> Result<MomResult> {
    match model {
        Model::Beta => Ok(mom_fit_beta(d)),
        Model::DnCBeta11 => mom_fit_dncbeta11(d),
        Model::Nc1Beta11 => Ok(mom_fit_type1_11(d)),
        Model::Nc2Beta11 => Ok(mom_fit_type2_11(d)),
        Model::G3B11 => Ok(mom_fit_g3b11(d)),
        Model::GH11 => mom_fit_gh11(d),
        Model::CH11 => Ok(mom_fit_ch11(d)),
    }
}

fn feasible(model: Model, params: Vec<f64>) -> MomResult {
    MomResult {
        model,
        raw_solution: params.clone(),
        params,
        feasible: true,
        recommendation: None,
        notes: vec![],
    }
}

fn infeasible(model: Model, raw: Vec<f64>, note: String) -> MomResult {
    MomResult {
        model,
        params: model.default_start(),
        feasible: false,
        raw_solution: raw,
        recommendation: None,
        notes: vec![note],
    }
}

fn is_uniform(m: f64, s2: f64) -> bool {
    (m - 0.5).abs() <= 1e-12 && (s2 - 1.0 / 12.0).abs() <= 1e-12
}

/// Closed-form beta moment matching.
pub fn mom_fit_beta(d: &Dataset) -> MomResult {
    let (m, s2) = (d.mean(), d.variance());
    let k = m * (1.0 - m) / s2 - 1.0;
    if !(k > 0.0) || !k.is_finite() {
        return infeasible(
            Model::Beta,
            vec![],
            format!(
                "sample variance {s2} is not below m(1-m) = {}",
                m * (1.0 - m)
            ),
        );
    }
    feasible(Model::Beta, vec![m * k, (1.0 - m) * k])
}

/// Solves mean and variance of B″(1,1,λ₁,λ₂) against the sample by damped Newton.
pub fn mom_fit_dncbeta11(d: &Dataset) -> Result<MomResult> {
    let (m, s2) = (d.mean(), d.variance());
    if is_uniform(m, s2) {
        return Ok(feasible(Model::DnCBeta11, vec![0.0, 0.0]));
    }
    let resid = |x: &[f64]| [mean_11_raw(x[0], x[1]) - m, var_11_raw(x[0], x[1]) - s2];
    let mut roots: Vec<([f64; 2], f64)> = Vec::new();
    for &a in &START_GRID {
        for &b in &START_GRID {
            if let Some(r) = newton2(&resid, [a, b], 1e-6) {
                roots.push(r);
            }
        }
    }
    let best = |pred: &dyn Fn(&[f64; 2]) -> bool| {
        roots
            .iter()
            .filter(|(x, _)| pred(x))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .copied()
    };
    let tol = -1e-9;
    if let Some((x, _)) = best(&|x| x[0] >= tol && x[1] >= tol) {
        let mut r = feasible(Model::DnCBeta11, vec![x[0].max(0.0), x[1].max(0.0)]);
        r.raw_solution = x.to_vec();
        return Ok(r);
    }
    let Some((x, _)) = best(&|_| true) else {
        return Err(Error::NoRoot(format!(
            "moment equations for dncbeta11 have no root (mean {m}, variance {s2})"
        )));
    };
    let rec = if x[0] < 0.0 {
        Model::Nc2Beta11
    } else {
        Model::Nc1Beta11
    };
    let mut r = infeasible(
        Model::DnCBeta11,
        x.to_vec(),
        format!(
            "moment solution ({}, {}) has a negative non-centrality; fit {} instead",
            x[0], x[1], rec
        ),
    );
    r.params = vec![x[0].max(1e-6), x[1].max(1e-6)];
    r.recommendation = Some(rec);
    Ok(r)
}

// Damped Newton for a 2-vector residual with a forward-difference Jacobian.
// Returns the root and its residual norm.
fn newton2(f: &dyn Fn(&[f64]) -> [f64; 2], x0: [f64; 2], rel_step: f64) -> Option<([f64; 2], f64)> {
    let norm = |r: [f64; 2]| (r[0] * r[0] + r[1] * r[1]).sqrt();
    let mut x = x0;
    let mut r = f(&x);
    let mut nr = norm(r);
    if !nr.is_finite() {
        return None;
    }
    for _ in 0..NEWTON_ITERS {
        if nr < 1e-14 {
            return Some((x, nr));
        }
        let mut jac = [[0.0; 2]; 2];
        for j in 0..2 {
            let h = rel_step * x[j].abs().max(1.0);
            let mut xp = x;
            xp[j] += h;
            let rp = f(&xp);
            jac[0][j] = (rp[0] - r[0]) / h;
            jac[1][j] = (rp[1] - r[1]) / h;
        }
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dx = [
            -(jac[1][1] * r[0] - jac[0][1] * r[1]) / det,
            -(-jac[1][0] * r[0] + jac[0][0] * r[1]) / det,
        ];
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..=MAX_HALVINGS {
            let xn = [x[0] + t * dx[0], x[1] + t * dx[1]];
            let rn = f(&xn);
            let nn = norm(rn);
            if nn.is_finite() && nn < nr {
                let small_step = (t * dx[0]).abs() + (t * dx[1]).abs()
                    <= 1e-13 * (1.0 + x[0].abs() + x[1].abs());
                x = xn;
                r = rn;
                nr = nn;
                accepted = true;
                if small_step && nr < 1e-10 {
                    return Some((x, nr));
                }
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return (nr < 1e-10).then_some((x, nr));
        }
    }
    (nr < 1e-10).then_some((x, nr))
}

// Bisection for an increasing function g on [lo, hi] with g(lo) < 0 < g(hi).
fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        let v = g(mid);
        if v.abs() < 1e-10 && (hi - lo) < 1e-10 * (1.0 + mid.abs()) {
            return mid;
        }
        if v < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * mid.abs() {
            break;
        }
    }
    0.5 * (lo + hi)
}

const LAMBDA_LO: f64 = 1e-8;
const LAMBDA_HI: f64 = 1e4;

fn type12_fit(model: Model, d: &Dataset, mean: impl Fn(f64) -> f64, sign: f64) -> MomResult {
    let m = d.mean();
    if (m - 0.5).abs() <= 1e-12 {
        return feasible(model, vec![0.0]);
    }
    let g = |l: f64| sign * (mean(l) - m);
    if g(LAMBDA_LO) >= 0.0 || g(LAMBDA_HI) <= 0.0 {
        return infeasible(
            model,
            vec![],
            format!("sample mean {m} is outside the attainable range of {model}"),
        );
    }
    feasible(model, vec![bisect(g, LAMBDA_LO, LAMBDA_HI)])
}

/// Type 1 at unit shapes: mean matching, needs a sample mean above 1/2.
pub fn mom_fit_type1_11(d: &Dataset) -> MomResult {
    type12_fit(Model::Nc1Beta11, d, |l| mean_type12_11(l).0, 1.0)
}

/// Type 2 at unit shapes: mean matching, needs a sample mean below 1/2.
pub fn mom_fit_type2_11(d: &Dataset) -> MomResult {
    type12_fit(Model::Nc2Beta11, d, |l| mean_type12_11(l).1, -1.0)
}

/// G3B(1,1,γ): mean matching on ln γ.
pub fn mom_fit_g3b11(d: &Dataset) -> MomResult {
    let m = d.mean();
    // mean decreases in γ
    let g = |u: f64| m - g3b_mean_11(u.exp());
    let (lo, hi) = (-30.0, 30.0);
    if g(lo) >= 0.0 || g(hi) <= 0.0 {
        return infeasible(
            Model::G3B11,
            vec![],
            format!("sample mean {m} is out of range"),
        );
    }
    feasible(Model::G3B11, vec![bisect(g, lo, hi).exp()])
}

/// CH(1,1,δ): mean matching on δ.
pub fn mom_fit_ch11(d: &Dataset) -> MomResult {
    let m = d.mean();
    let g = |delta: f64| m - ch_mean_11(delta);
    let (lo, hi) = (-500.0, 500.0);
    if g(lo) >= 0.0 || g(hi) <= 0.0 {
        return infeasible(
            Model::CH11,
            vec![],
            format!("sample mean {m} is out of range"),
        );
    }
    feasible(Model::CH11, vec![bisect(g, lo, hi)])
}

/// GH(1,1,λ,z): mean and variance matching by damped Newton over a start grid.
pub fn mom_fit_gh11(d: &Dataset) -> Result<MomResult> {
    let (m, s2) = (d.mean(), d.variance());
    if is_uniform(m, s2) {
        return Ok(feasible(Model::GH11, vec![0.0, 0.0]));
    }
    let resid = |x: &[f64]| -> [f64; 2] {
        if !(x[1] > -1.0) || !x[0].is_finite() || !x[1].is_finite() {
            return [f64::INFINITY; 2];
        }
        let (m1, m2) = gh_moments_11(x[0], x[1]);
        [m1 - m, m2 - m1 * m1 - s2]
    };
    let mut best: Option<([f64; 2], f64)> = None;
    for &lam in &[-4.0, -1.0, 1.0, 4.0] {
        for &z in &[-0.5, 0.5, 3.0, 20.0] {
            if let Some(r) = newton2(&resid, [lam, z], 1e-6) {
                if best.is_none_or(|b| r.1 < b.1) {
                    best = Some(r);
                }
            }
        }
    }
    best.map(|(x, _)| feasible(Model::GH11, x.to_vec()))
        .ok_or_else(|| {
            Error::NoRoot(format!(
                "GH moment equations have no root (mean {m}, variance {s2})"
            ))
        })
}
