//! Moment matching, maximum likelihood, standard errors and AIC ranking for
//! proportion data.

mod mle;
mod mom;
pub mod optim;

pub use mle::{compare_models, covariance, mle_fit, observed_information_se, Comparison};
pub use mom::{
    mom_fit, mom_fit_beta, mom_fit_ch11, mom_fit_dncbeta11, mom_fit_g3b11, mom_fit_gh11,
    mom_fit_type1_11, mom_fit_type2_11,
};

use std::fmt;
use std::str::FromStr;

use crate::altmodels::{ch_ln_scale_11, gh_norm_11};
use crate::error::{Error, Result};
use crate::specfun::{ln_beta, ln_humbert_psi2_unit, SeriesControl};

/// Models that can be fitted. All non-beta models fix both shapes at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Beta,
    DnCBeta11,
    Nc1Beta11,
    Nc2Beta11,
    G3B11,
    GH11,
    CH11,
}

/// How a parameter is kept inside its domain during unconstrained search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Support {
    /// θ > 0, or θ >= 0 for non-centralities.
    Positive,
    /// θ > -1.
    AboveMinusOne,
    Real,
}

impl Model {
    pub const ALL: [Model; 7] = [
        Model::Beta,
        Model::DnCBeta11,
        Model::Nc1Beta11,
        Model::Nc2Beta11,
        Model::G3B11,
        Model::GH11,
        Model::CH11,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::Beta => "beta",
            Model::DnCBeta11 => "dncbeta11",
            Model::Nc1Beta11 => "nc1beta11",
            Model::Nc2Beta11 => "nc2beta11",
            Model::G3B11 => "g3b11",
            Model::GH11 => "gh11",
            Model::CH11 => "ch11",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Model::Beta => &["a1", "a2"],
            Model::DnCBeta11 => &["l1", "l2"],
            Model::Nc1Beta11 | Model::Nc2Beta11 => &["l"],
            Model::G3B11 => &["gamma"],
            Model::GH11 => &["lam", "z"],
            Model::CH11 => &["delta"],
        }
    }

    pub fn n_params(self) -> usize {
        self.param_names().len()
    }

    /// True for parameters whose estimate may sit exactly on zero.
    pub fn is_noncentrality(self, i: usize) -> bool {
        matches!(self, Model::DnCBeta11 | Model::Nc1Beta11 | Model::Nc2Beta11)
            && i < self.n_params()
    }

    pub(crate) fn supports(self) -> &'static [Support] {
        match self {
            Model::Beta | Model::DnCBeta11 => &[Support::Positive, Support::Positive],
            Model::Nc1Beta11 | Model::Nc2Beta11 | Model::G3B11 => &[Support::Positive],
            Model::GH11 => &[Support::Real, Support::AboveMinusOne],
            Model::CH11 => &[Support::Real],
        }
    }

    /// Parameters used when nothing better is known.
    pub(crate) fn default_start(self) -> Vec<f64> {
        match self {
            Model::Beta => vec![1.0, 1.0],
            Model::DnCBeta11 => vec![1.0, 1.0],
            Model::Nc1Beta11 | Model::Nc2Beta11 | Model::G3B11 => vec![1.0],
            Model::GH11 => vec![0.0, 0.0],
            Model::CH11 => vec![0.0],
        }
    }

    pub(crate) fn check_params(self, params: &[f64]) -> Result<()> {
        if params.len() != self.n_params() {
            return Err(Error::domain(format!(
                "{} takes {} parameters, got {}",
                self.name(),
                self.n_params(),
                params.len()
            )));
        }
        for ((&v, s), name) in params.iter().zip(self.supports()).zip(self.param_names()) {
            let ok = v.is_finite()
                && match s {
                    Support::Positive if self.is_noncentrality(0) => v >= 0.0,
                    Support::Positive => v > 0.0,
                    Support::AboveMinusOne => v > -1.0,
                    Support::Real => true,
                };
            if !ok {
                return Err(Error::domain(format!(
                    "{} parameter {name} = {v} is outside its domain",
                    self.name()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown model `{s}`")))
    }
}

/// Sample of proportions strictly inside (0, 1).
///
/// Values are kept sorted so every estimator is independent of input order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    values: Vec<f64>,
    sum_ln: f64,
    sum_ln1m: f64,
}

impl Dataset {
    pub fn new(name: impl Into<String>, mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Data("dataset is empty".into()));
        }
        if let Some((i, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v > 0.0 && **v < 1.0))
        {
            return Err(Error::Data(format!(
                "value {v} at position {} is not strictly inside (0,1)",
                i + 1
            )));
        }
        values.sort_by(f64::total_cmp);
        let sum_ln = values.iter().map(|x| x.ln()).sum();
        let sum_ln1m = values.iter().map(|x| (-x).ln_1p()).sum();
        Ok(Dataset {
            name: name.into(),
            values,
            sum_ln,
            sum_ln1m,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Sample variance with the n - 1 divisor; zero for a single value.
    pub fn variance(&self) -> f64 {
        let n = self.len();
        if n < 2 {
            return 0.0;
        }
        let m = self.mean();
        self.values.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (n - 1) as f64
    }
}

/// Outcome of a maximum-likelihood fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub model: Model,
    pub params: Vec<f64>,
    /// Standard errors; `None` where the observed information was unusable.
    pub se: Vec<Option<f64>>,
    /// Inverse observed information, when usable.
    pub cov: Option<Vec<Vec<f64>>>,
    pub loglik: f64,
    pub aic: f64,
    pub converged: bool,
    /// Objective evaluations used by the optimiser.
    pub iters: usize,
    /// Parameters reported exactly at the zero boundary.
    pub boundary: Vec<bool>,
    pub notes: Vec<String>,
}

impl FitResult {
    pub fn param_names(&self) -> &'static [&'static str] {
        self.model.param_names()
    }
}

/// Outcome of moment matching.
#[derive(Debug, Clone, PartialEq)]
pub struct MomResult {
    pub model: Model,
    /// Estimates clamped into the parameter domain.
    pub params: Vec<f64>,
    pub feasible: bool,
    /// Solution before clamping; empty when no solution exists.
    pub raw_solution: Vec<f64>,
    pub recommendation: Option<Model>,
    pub notes: Vec<String>,
}

/// Akaike information criterion -2 l + 2 p.
pub fn aic(loglik: f64, p: usize) -> f64 {
    -2.0 * loglik + 2.0 * p as f64
}

/// Log-likelihood of `model` at `params` over the dataset.
pub fn loglik(model: Model, params: &[f64], d: &Dataset, ctrl: SeriesControl) -> Result<f64> {
    model.check_params(params)?;
    let n = d.len() as f64;
    let xs = d.values();
    Ok(match model {
        Model::Beta => {
            let (a, b) = (params[0], params[1]);
            (a - 1.0) * d.sum_ln + (b - 1.0) * d.sum_ln1m - n * ln_beta(a, b)?
        }
        Model::DnCBeta11 => {
            let (l1, l2) = (params[0], params[1]);
            let mut s = -0.5 * n * (l1 + l2);
            if l1 + l2 > 0.0 {
                for (i, &x) in xs.iter().enumerate() {
                    s += ln_humbert_psi2_unit(2.0, 0.5 * l1 * x, 0.5 * l2 * (1.0 - x), ctrl)
                        .map_err(|e| Error::AtObservation {
                            index: i,
                            source: Box::new(e),
                        })?;
                }
            }
            s
        }
        Model::Nc1Beta11 => {
            let l = params[0];
            xs.iter()
                .map(|&x| -0.5 * l * (1.0 - x) + (0.5 * l * x).ln_1p())
                .sum()
        }
        Model::Nc2Beta11 => {
            let l = params[0];
            xs.iter()
                .map(|&x| -0.5 * l * x + (0.5 * l * (1.0 - x)).ln_1p())
                .sum()
        }
        Model::G3B11 => {
            let g = params[0];
            n * g.ln() - 2.0 * xs.iter().map(|&x| (1.0 - (1.0 - g) * x).ln()).sum::<f64>()
        }
        Model::GH11 => {
            let (lam, z) = (params[0], params[1]);
            -lam * xs.iter().map(|&x| (z * x).ln_1p()).sum::<f64>() - n * gh_norm_11(lam, z).ln()
        }
        Model::CH11 => {
            let delta = params[0];
            -delta * xs.iter().sum::<f64>() + n * ch_ln_scale_11(delta)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dataset_validation() {
        assert!(matches!(Dataset::new("e", vec![]), Err(Error::Data(_))));
        let e = Dataset::new("bad", vec![0.2, 1.0]).unwrap_err();
        assert!(e.to_string().contains("position 2"), "{e}");
        let d = Dataset::new("ok", vec![0.7, 0.1, 0.4]).unwrap();
        assert_eq!(d.values(), &[0.1, 0.4, 0.7]);
        assert!((d.mean() - 0.4).abs() < 1e-15);
        assert!((d.variance() - 0.09).abs() < 1e-15);
    }

    #[test]
    fn model_names_round_trip() {
        for m in Model::ALL {
            assert_eq!(m.name().parse::<Model>().unwrap(), m);
        }
        assert!("nope".parse::<Model>().is_err());
    }

    #[test]
    fn neutral_logliks_vanish() {
        let d = Dataset::new("u", vec![0.1, 0.35, 0.6, 0.92]).unwrap();
        let c = SeriesControl::default();
        assert!(loglik(Model::Beta, &[1.0, 1.0], &d, c).unwrap().abs() < 1e-14);
        assert_eq!(loglik(Model::DnCBeta11, &[0.0, 0.0], &d, c).unwrap(), 0.0);
        assert_eq!(loglik(Model::Nc1Beta11, &[0.0], &d, c).unwrap(), 0.0);
        assert_eq!(loglik(Model::G3B11, &[1.0], &d, c).unwrap(), 0.0);
        assert_eq!(loglik(Model::GH11, &[0.0, 0.0], &d, c).unwrap(), 0.0);
        assert_eq!(loglik(Model::CH11, &[0.0], &d, c).unwrap(), 0.0);
        assert!(loglik(Model::Beta, &[1.0], &d, c).is_err());
        assert!(loglik(Model::DnCBeta11, &[-1.0, 1.0], &d, c).is_err());
        assert!(loglik(Model::GH11, &[1.0, -1.0], &d, c).is_err());
    }
}
