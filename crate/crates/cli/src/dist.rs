//! Distribution selection shared by `eval`, `sample` and `curve`.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use ncbeta_core::altmodels::{self, CHParams, GHParams};
use ncbeta_core::ncbeta::{self, patnaik_g3b};
use ncbeta_core::sampling::{self, Route};
use ncbeta_core::{
    ncchisq, DnCBetaParams, Error, G3BParams, Nc1BetaParams, Nc2BetaParams, NcChiSqParams,
    RandomStream, Result, SeriesControl,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Dncbeta,
    Nc1beta,
    Nc2beta,
    Ncchisq,
    G3b,
    Gh,
    Ch,
}

impl Family {
    /// Parameter names in positional order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            Family::Dncbeta => &["a1", "a2", "l1", "l2"],
            Family::Nc1beta | Family::Nc2beta => &["a1", "a2", "l"],
            Family::Ncchisq => &["g", "lambda"],
            Family::G3b => &["b1", "b2", "gamma"],
            Family::Gh => &["a", "b", "lam", "z"],
            Family::Ch => &["c", "d", "delta"],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Dncbeta => "dncbeta",
            Family::Nc1beta => "nc1beta",
            Family::Nc2beta => "nc2beta",
            Family::Ncchisq => "ncchisq",
            Family::G3b => "g3b",
            Family::Gh => "gh",
            Family::Ch => "ch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Dist {
    DnCBeta(DnCBetaParams),
    Nc1(Nc1BetaParams),
    Nc2(Nc2BetaParams),
    NcChiSq(NcChiSqParams),
    G3B(G3BParams),
    GH(GHParams),
    CH(CHParams),
}

impl Dist {
    pub fn new(family: Family, v: &[f64]) -> Result<Self> {
        let want = family.params();
        if v.len() != want.len() {
            return Err(Error::Domain(format!(
                "{} takes {} parameters ({}), got {}",
                family.name(),
                want.len(),
                want.join(", "),
                v.len()
            )));
        }
        Ok(match family {
            Family::Dncbeta => Dist::DnCBeta(DnCBetaParams::new(v[0], v[1], v[2], v[3])?),
            Family::Nc1beta => Dist::Nc1(Nc1BetaParams::new(v[0], v[1], v[2])?),
            Family::Nc2beta => Dist::Nc2(Nc2BetaParams::new(v[0], v[1], v[2])?),
            Family::Ncchisq => Dist::NcChiSq(NcChiSqParams::new(v[0], v[1])?),
            Family::G3b => Dist::G3B(G3BParams::new(v[0], v[1], v[2])?),
            Family::Gh => Dist::GH(GHParams::new(v[0], v[1], v[2], v[3])?),
            Family::Ch => Dist::CH(CHParams::new(v[0], v[1], v[2])?),
        })
    }

    pub fn pdf(&self, x: f64, ctrl: SeriesControl) -> Result<f64> {
        match self {
            Dist::DnCBeta(p) => ncbeta::pdf(x, p, ctrl),
            Dist::Nc1(p) => ncbeta::type1_pdf(x, p, ctrl),
            Dist::Nc2(p) => ncbeta::type2_pdf(x, p, ctrl),
            Dist::NcChiSq(p) => ncchisq::pdf(x, p, ctrl),
            Dist::G3B(p) => altmodels::g3b_pdf(x, p),
            Dist::GH(p) => altmodels::gh_pdf(x, p, ctrl),
            Dist::CH(p) => altmodels::ch_pdf(x, p, ctrl),
        }
    }

    pub fn cdf(&self, x: f64, ctrl: SeriesControl) -> Result<f64> {
        match self {
            Dist::DnCBeta(p) => ncbeta::cdf(x, p, ctrl),
            Dist::Nc1(p) => ncbeta::type1_cdf(x, p, ctrl),
            Dist::Nc2(p) => ncbeta::type2_cdf(x, p, ctrl),
            Dist::NcChiSq(p) => ncchisq::cdf(x, p, ctrl),
            Dist::G3B(p) => altmodels::g3b_cdf(x, p, true),
            Dist::GH(_) | Dist::CH(_) => Err(Error::Domain(
                "cdf is not available for gh and ch; use pdf or moment".into(),
            )),
        }
    }

    pub fn moment(&self, r: usize, ctrl: SeriesControl) -> Result<f64> {
        match self {
            Dist::DnCBeta(p) => ncbeta::moment(r, p, ctrl),
            Dist::Nc1(p) => ncbeta::type1_moment(r, p, ctrl),
            Dist::Nc2(p) => ncbeta::type2_moment(r, p, ctrl),
            Dist::NcChiSq(p) if p.g() == 0.0 => ncchisq::moment_purely_noncentral(r, p.lambda()),
            Dist::NcChiSq(p) => ncchisq::moment_literature(r, p),
            Dist::G3B(p) => altmodels::g3b_moment(r, p, ctrl),
            Dist::GH(p) => altmodels::gh_moment(r, p, ctrl),
            Dist::CH(p) => altmodels::ch_moment(r, p, ctrl),
        }
    }

    /// The B″ family member behind this distribution, if any.
    pub fn as_dncbeta(&self) -> Option<DnCBetaParams> {
        match self {
            Dist::DnCBeta(p) => Some(*p),
            Dist::Nc1(p) => Some(p.to_dncbeta()),
            Dist::Nc2(p) => Some(p.to_dncbeta()),
            _ => None,
        }
    }

    /// G3B approximation of a B″ family member.
    pub fn patnaik(&self) -> Option<Dist> {
        self.as_dncbeta().map(|p| Dist::G3B(patnaik_g3b(&p)))
    }

    pub fn sample(&self, n: usize, route: Route, rng: &mut RandomStream) -> Result<Vec<f64>> {
        match self {
            Dist::NcChiSq(p) => Ok(ncchisq::sample(n, p, rng)),
            Dist::G3B(p) => Ok(sampling::sample_g3b(n, p, rng)),
            _ => match self.as_dncbeta() {
                Some(p) => sampling::sample(route, n, &p, rng),
                None => Err(Error::Domain(
                    "sampling is available for dncbeta, nc1beta, nc2beta, ncchisq and g3b".into(),
                )),
            },
        }
    }
}

/// A distribution written as `family:p1,p2,...`, as used by `curve`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistSpec {
    pub label: String,
    pub dist: Dist,
}

impl FromStr for DistSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (fam, rest) = s.split_once(':').ok_or_else(|| {
            Error::Domain(format!("model spec `{s}` must look like family:p1,p2,..."))
        })?;
        let family = Family::from_str(fam.trim(), true)
            .map_err(|_| Error::Domain(format!("unknown family `{fam}`")))?;
        let vals = rest
            .split(',')
            .map(|v| {
                v.trim().parse::<f64>().map_err(|_| {
                    Error::Domain(format!("`{v}` in model spec `{s}` is not a number"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DistSpec {
            label: s.trim().to_string(),
            dist: Dist::new(family, &vals)?,
        })
    }
}

impl fmt::Display for DistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}
