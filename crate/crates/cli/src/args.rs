//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dist::{DistSpec, Family};

#[derive(Debug, Parser)]
#[command(
    name = "ncbeta",
    version,
    about = "Non-central beta distributions and proportion-data fitting"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a density, distribution function or raw moment.
    Eval(EvalArgs),
    /// Fit models to a single-column CSV of proportions.
    Fit(FitArgs),
    /// Fit models by maximum likelihood and rank them by AIC.
    Compare(CompareArgs),
    /// Draw random variates, one per line.
    Sample(SampleArgs),
    /// Write density or distribution-function curves on a grid as CSV.
    Curve(CurveArgs),
}

/// Distribution parameters; each family reads the flags it needs.
#[derive(Debug, Args, Default)]
pub struct ParamFlags {
    #[arg(long, allow_negative_numbers = true)]
    pub a1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub l1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub l2: Option<f64>,
    /// Non-centrality of nc1beta / nc2beta.
    #[arg(long, allow_negative_numbers = true)]
    pub l: Option<f64>,
    /// Degrees of freedom of ncchisq.
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Non-centrality of ncchisq.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lam: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
}

impl ParamFlags {
    pub fn get(&self, name: &str) -> Option<f64> {
        match name {
            "a1" => self.a1,
            "a2" => self.a2,
            "l1" => self.l1,
            "l2" => self.l2,
            "l" => self.l,
            "g" => self.g,
            "lambda" => self.lambda,
            "b1" => self.b1,
            "b2" => self.b2,
            "gamma" => self.gamma,
            "a" => self.a,
            "b" => self.b,
            "lam" => self.lam,
            "z" => self.z,
            "c" => self.c,
            "d" => self.d,
            "delta" => self.delta,
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Pdf,
    Cdf,
    Moment,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub family: Family,
    #[command(flatten)]
    pub params: ParamFlags,
    pub which: Which,
    /// Points x, or moment orders r.
    #[arg(required = true, allow_negative_numbers = true)]
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Mom,
    Mle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

const ALL_MODELS: &str = "beta,dncbeta11,nc1beta11,nc2beta11,g3b11,gh11,ch11";

#[derive(Debug, Args)]
pub struct FitArgs {
    pub csv: PathBuf,
    /// Comma-separated models: beta, dncbeta11, nc1beta11, nc2beta11, g3b11, gh11, ch11.
    #[arg(long, value_delimiter = ',', default_value = ALL_MODELS)]
    pub models: Vec<String>,
    #[arg(long, value_enum, default_value_t = Method::Mle)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub csv: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = ALL_MODELS)]
    pub models: Vec<String>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Definition,
    Mixture,
    Convex,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    pub family: Family,
    #[command(flatten)]
    pub params: ParamFlags,
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Sampler for the B″ family; ignored by other families.
    #[arg(long, value_enum, default_value_t = RouteArg::Mixture)]
    pub route: RouteArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pdf,
    Cdf,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Distributions written as family:p1,p2,... e.g. dncbeta:1,1,8,2
    #[arg(required = true, allow_negative_numbers = true)]
    pub specs: Vec<DistSpec>,
    #[arg(long, default_value_t = 101)]
    pub grid: usize,
    #[arg(long, short)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Kind::Pdf)]
    pub kind: Kind,
    /// Add the G3B approximation next to each B″-family column.
    #[arg(long)]
    pub patnaik: bool,
}
