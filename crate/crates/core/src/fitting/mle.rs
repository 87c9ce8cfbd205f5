use super::optim::{hessian, nelder_mead, softplus, softplus_inv, spd_inverse};
use super::{aic, loglik, mom_fit, Dataset, FitResult, Model, Support};
use crate::error::{Error, Result};
use crate::specfun::SeriesControl;

const MAX_EVALS: usize = 2000;
const U_FLOOR: f64 = -25.0;
const SNAP: f64 = 1e-4;
const START_FLOOR: f64 = 1e-6;

fn to_params(model: Model, u: &[f64]) -> Vec<f64> {
    u.iter()
        .zip(model.supports())
        .map(|(&v, s)| match s {
            Support::Positive => softplus(v.max(U_FLOOR)),
            Support::AboveMinusOne => -1.0 + softplus(v.max(U_FLOOR)),
            Support::Real => v,
        })
        .collect()
}

fn to_unconstrained(model: Model, p: &[f64]) -> Vec<f64> {
    p.iter()
        .zip(model.supports())
        .map(|(&v, s)| match s {
            Support::Positive => softplus_inv(v.max(START_FLOOR)),
            Support::AboveMinusOne => softplus_inv((v + 1.0).max(START_FLOOR)),
            Support::Real => v,
        })
        .collect()
}

fn neg_loglik(model: Model, p: &[f64], d: &Dataset, ctrl: SeriesControl) -> f64 {
    match loglik(model, p, d, ctrl) {
        Ok(l) if l.is_finite() => -l,
        _ => f64::INFINITY,
    }
}

/// Maximum-likelihood fit by Nelder–Mead on transformed parameters.
///
/// Starts from `init` when given, otherwise from the better of the moment
/// estimate and the model's neutral point.
pub fn mle_fit(
    model: Model,
    d: &Dataset,
    init: Option<&[f64]>,
    ctrl: SeriesControl,
) -> Result<FitResult> {
    let mut notes = Vec::new();
    let mut starts: Vec<Vec<f64>> = Vec::new();
    if let Some(p) = init {
        model.check_params(p)?;
        starts.push(p.to_vec());
    } else {
        match mom_fit(model, d) {
            Ok(m) if m.feasible => starts.push(m.params),
            Ok(m) => {
                notes.push(format!("moment start infeasible: {}", m.notes.join("; ")));
                if m.params.len() == model.n_params() && model.check_params(&m.params).is_ok() {
                    starts.push(m.params);
                }
            }
            Err(e) => notes.push(format!("moment start unavailable: {e}")),
        }
        starts.push(model.default_start());
    }
    let obj = |u: &[f64]| neg_loglik(model, &to_params(model, u), d, ctrl);
    let u0 = starts
        .iter()
        .map(|p| to_unconstrained(model, p))
        .map(|u| (obj(&u), u))
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, u)| u)
        .expect("at least one start");
    if !obj(&u0).is_finite() {
        // surface the underlying error rather than a silent failure
        loglik(model, &to_params(model, &u0), d, ctrl)?;
        return Err(Error::Convergence {
            series: "likelihood",
            partial_sum: f64::NAN,
            terms: 0,
        });
    }
    let first = nelder_mead(obj, &u0, 0.5, 1e-8, MAX_EVALS);
    let second = nelder_mead(
        obj,
        &first.x,
        0.05,
        1e-8,
        MAX_EVALS.saturating_sub(first.evals).max(50),
    );
    let best = if second.fx <= first.fx {
        &second
    } else {
        &first
    };
    let evals = first.evals + second.evals;
    let converged = second.converged;
    if !converged {
        notes.push("optimiser stopped on its evaluation budget".into());
    }

    let mut params = to_params(model, &best.x);
    let mut boundary = vec![false; params.len()];
    for (i, v) in params.iter_mut().enumerate() {
        if model.is_noncentrality(i) && *v < SNAP {
            *v = 0.0;
            boundary[i] = true;
        }
    }
    let ll = loglik(model, &params, d, ctrl)?;
    if boundary.iter().any(|&b| b) {
        notes.push("non-centrality estimate on the zero boundary".into());
    }
    let (cov, se_notes) = observed_information_cov(model, &params, d, ctrl);
    notes.extend(se_notes);
    let se = standard_errors_from(cov.as_deref(), params.len());
    Ok(FitResult {
        model,
        se,
        cov,
        loglik: ll,
        aic: aic(ll, model.n_params()),
        converged,
        iters: evals,
        boundary,
        params,
        notes,
    })
}

/// Standard errors from the observed information of the log-likelihood.
///
/// Coordinates at zero are differenced forwards. Returns `None` entries with
/// a note when halving the step changes the curvature by more than 1% or the
/// information is not positive definite.
pub fn observed_information_se(
    model: Model,
    params: &[f64],
    d: &Dataset,
    ctrl: SeriesControl,
) -> (Vec<Option<f64>>, Vec<String>) {
    let (cov, notes) = observed_information_cov(model, params, d, ctrl);
    (standard_errors_from(cov.as_deref(), params.len()), notes)
}

fn observed_information_cov(
    model: Model,
    params: &[f64],
    d: &Dataset,
    ctrl: SeriesControl,
) -> (Option<Vec<Vec<f64>>>, Vec<String>) {
    let forward: Vec<bool> = params
        .iter()
        .enumerate()
        .map(|(i, &v)| model.is_noncentrality(i) && v == 0.0)
        .collect();
    let mut f = |p: &[f64]| loglik(model, p, d, ctrl).map(|l| -l);
    covariance(&mut f, params, &forward)
}

fn standard_errors_from(cov: Option<&[Vec<f64>]>, n: usize) -> Vec<Option<f64>> {
    match cov {
        Some(c) => (0..n).map(|i| Some(c[i][i].sqrt())).collect(),
        None => vec![None; n],
    }
}

/// Inverse Hessian of a negative log-likelihood `f` at `x`, or `None` with a
/// note when the curvature is unstable or not positive definite.
pub fn covariance<E: std::fmt::Display>(
    f: &mut impl FnMut(&[f64]) -> std::result::Result<f64, E>,
    x: &[f64],
    forward: &[bool],
) -> (Option<Vec<Vec<f64>>>, Vec<String>) {
    let n = x.len();
    let h: Vec<f64> = x.iter().map(|v| 1e-4 * v.abs().max(1.0)).collect();
    let h2: Vec<f64> = h.iter().map(|v| 0.5 * v).collect();
    let (coarse, fine) = match (hessian(f, x, &h, forward), hessian(f, x, &h2, forward)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return (None, vec![format!("standard errors unavailable: {e}")]);
        }
    };
    for i in 0..n {
        let (a, b) = (coarse[i][i], fine[i][i]);
        if !(a.is_finite() && b.is_finite()) || (a - b).abs() > 0.01 * b.abs() {
            return (
                None,
                vec![format!(
                    "standard errors unavailable: curvature of coordinate {i} is unstable"
                )],
            );
        }
    }
    match spd_inverse(&fine) {
        Some(inv) => (Some(inv), vec![]),
        None => (
            None,
            vec!["standard errors unavailable: information is not positive definite".into()],
        ),
    }
}

/// Fits and failures of a model comparison, ranked by AIC.
#[derive(Debug)]
pub struct Comparison {
    pub ranked: Vec<FitResult>,
    pub failures: Vec<(Model, Error)>,
}

impl Comparison {
    pub fn winner(&self) -> Option<&FitResult> {
        self.ranked.first()
    }
}

/// Fits every model by maximum likelihood and ranks them by AIC.
pub fn compare_models(d: &Dataset, models: &[Model], ctrl: SeriesControl) -> Comparison {
    let mut ranked = Vec::new();
    let mut failures = Vec::new();
    for &m in models {
        match mle_fit(m, d, None, ctrl) {
            Ok(f) => ranked.push(f),
            Err(e) => failures.push((m, e)),
        }
    }
    ranked.sort_by(|a, b| a.aic.total_cmp(&b.aic));
    Comparison { ranked, failures }
}
