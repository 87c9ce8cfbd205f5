//! JSON and text renderings of fit results.

use ncbeta_core::{Error, FitResult, Model, MomResult};
use serde::{Deserialize, Serialize};

use crate::numfmt::fmt_g;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonParam {
    pub name: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub se: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub boundary: bool,
}

/// Maximum-likelihood fit as written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonFit {
    pub model: String,
    pub params: Vec<JsonParam>,
    pub loglik: f64,
    pub aic: f64,
    pub converged: bool,
    #[serde(default)]
    pub iters: usize,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cov: Option<Vec<Vec<f64>>>,
}

impl From<&FitResult> for JsonFit {
    fn from(f: &FitResult) -> Self {
        let params = f
            .param_names()
            .iter()
            .enumerate()
            .map(|(i, n)| JsonParam {
                name: n.to_string(),
                value: f.params[i],
                se: f.se.get(i).copied().flatten(),
                boundary: f.boundary.get(i).copied().unwrap_or(false),
            })
            .collect();
        JsonFit {
            model: f.model.name().to_string(),
            params,
            loglik: f.loglik,
            aic: f.aic,
            converged: f.converged,
            iters: f.iters,
            notes: f.notes.clone(),
            cov: f.cov.clone(),
        }
    }
}

impl TryFrom<JsonFit> for FitResult {
    type Error = Error;
    fn try_from(j: JsonFit) -> Result<Self, Error> {
        let model: Model = j.model.parse()?;
        let names = model.param_names();
        if j.params.len() != names.len() || j.params.iter().zip(names).any(|(p, n)| p.name != *n) {
            return Err(Error::Data(format!(
                "parameters of {} must be [{}]",
                model.name(),
                names.join(", ")
            )));
        }
        Ok(FitResult {
            model,
            params: j.params.iter().map(|p| p.value).collect(),
            se: j.params.iter().map(|p| p.se).collect(),
            cov: j.cov,
            loglik: j.loglik,
            aic: j.aic,
            converged: j.converged,
            iters: j.iters,
            boundary: j.params.iter().map(|p| p.boundary).collect(),
            notes: j.notes,
        })
    }
}

/// Moment-matching fit as written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonMom {
    pub model: String,
    pub params: Vec<JsonParam>,
    pub feasible: bool,
    pub raw_solution: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recommendation: Option<String>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl From<&MomResult> for JsonMom {
    fn from(m: &MomResult) -> Self {
        JsonMom {
            model: m.model.name().to_string(),
            params: m
                .model
                .param_names()
                .iter()
                .zip(&m.params)
                .map(|(n, v)| JsonParam {
                    name: n.to_string(),
                    value: *v,
                    se: None,
                    boundary: false,
                })
                .collect(),
            feasible: m.feasible,
            raw_solution: m.raw_solution.clone(),
            recommendation: m.recommendation.map(|r| r.name().to_string()),
            notes: m.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonFailure {
    pub model: String,
    pub error: String,
}

impl JsonFailure {
    pub fn new(model: Model, e: &Error) -> Self {
        JsonFailure {
            model: model.name().to_string(),
            error: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum FitReport {
    Mle {
        dataset: String,
        n: usize,
        fits: Vec<JsonFit>,
        failures: Vec<JsonFailure>,
    },
    Mom {
        dataset: String,
        n: usize,
        fits: Vec<JsonMom>,
        failures: Vec<JsonFailure>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub dataset: String,
    pub n: usize,
    pub winner: Option<String>,
    pub ranked: Vec<JsonFit>,
    pub failures: Vec<JsonFailure>,
}

fn param_line(p: &JsonParam) -> String {
    let mut s = format!("  {:<6} {:>14}", p.name, fmt_g(p.value, 8));
    match p.se {
        Some(se) => s.push_str(&format!("  se {}", fmt_g(se, 4))),
        None => s.push_str("  se -"),
    }
    if p.boundary {
        s.push_str("  (at boundary)");
    }
    s
}

pub fn mle_text(f: &JsonFit, winner: bool) -> String {
    let mut out = format!(
        "{}{}: loglik {}  aic {}{}\n",
        f.model,
        if winner { " *" } else { "" },
        fmt_g(f.loglik, 8),
        fmt_g(f.aic, 8),
        if f.converged { "" } else { "  [not converged]" }
    );
    for p in &f.params {
        out.push_str(&param_line(p));
        out.push('\n');
    }
    for n in &f.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

pub fn mom_text(m: &JsonMom) -> String {
    let mut out = format!(
        "{}: {}\n",
        m.model,
        if m.feasible { "feasible" } else { "infeasible" }
    );
    for p in &m.params {
        out.push_str(&format!("  {:<6} {:>14}\n", p.name, fmt_g(p.value, 8)));
    }
    if !m.feasible && !m.raw_solution.is_empty() {
        let raw: Vec<String> = m.raw_solution.iter().map(|v| fmt_g(*v, 8)).collect();
        out.push_str(&format!("  raw solution: {}\n", raw.join(", ")));
    }
    if let Some(r) = &m.recommendation {
        out.push_str(&format!("  recommended model: {r}\n"));
    }
    for n in &m.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

pub fn failures_text(fs: &[JsonFailure]) -> String {
    fs.iter()
        .map(|f| format!("{}: failed: {}\n", f.model, f.error))
        .collect()
}
