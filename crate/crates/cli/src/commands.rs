//! Subcommand implementations. Each writes to the supplied sink.

use std::fs::File;
use std::io::{BufWriter, Write};

use ncbeta_core::fitting::{compare_models, mle_fit, mom_fit};
use ncbeta_core::sampling::Route;
use ncbeta_core::{Error, Model, RandomStream, SeriesControl};

use crate::args::{
    CompareArgs, CurveArgs, EvalArgs, FitArgs, Kind, Method, Output, ParamFlags, RouteArg,
    SampleArgs, Which,
};
use crate::data::read_dataset;
use crate::dist::{Dist, Family};
use crate::numfmt::fmt_g;
use crate::report::{
    failures_text, mle_text, mom_text, CompareReport, FitReport, JsonFailure, JsonFit, JsonMom,
};
use crate::{CliError, CliResult};

const GRID_EDGE: f64 = 1e-9;

fn io_err(what: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{what}: {e}"))
}

fn dist_from_flags(family: Family, flags: &ParamFlags) -> CliResult<Dist> {
    let names = family.params();
    let missing: Vec<String> = names
        .iter()
        .filter(|n| flags.get(n).is_none())
        .map(|n| format!("--{n}"))
        .collect();
    if !missing.is_empty() {
        return Err(
            Error::Domain(format!("{} needs {}", family.name(), missing.join(", "))).into(),
        );
    }
    let vals: Vec<f64> = names.iter().filter_map(|n| flags.get(n)).collect();
    Ok(Dist::new(family, &vals)?)
}

fn parse_models(names: &[String]) -> CliResult<Vec<Model>> {
    let mut out = Vec::new();
    for n in names.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let m: Model = n.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err(Error::Domain("no models given".into()).into());
    }
    Ok(out)
}

fn moment_order(v: f64) -> CliResult<usize> {
    if v >= 1.0 && v.fract() == 0.0 && v <= 64.0 {
        Ok(v as usize)
    } else {
        Err(Error::Domain(format!("moment order must be a positive integer, got {v}")).into())
    }
}

pub fn eval(a: &EvalArgs, ctrl: SeriesControl, out: &mut impl Write) -> CliResult<()> {
    let dist = dist_from_flags(a.family, &a.params)?;
    for &v in &a.values {
        let y = match a.which {
            Which::Pdf => dist.pdf(v, ctrl)?,
            Which::Cdf => dist.cdf(v, ctrl)?,
            Which::Moment => dist.moment(moment_order(v)?, ctrl)?,
        };
        writeln!(out, "{}", fmt_g(y, 15)).map_err(|e| io_err("stdout", e))?;
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports contain only plain data")
}

pub fn fit(a: &FitArgs, ctrl: SeriesControl, out: &mut impl Write) -> CliResult<()> {
    let models = parse_models(&a.models)?;
    let d = read_dataset(&a.csv)?;
    let mut failures = Vec::new();
    let report = match a.method {
        Method::Mle => {
            let mut fits = Vec::new();
            for &m in &models {
                match mle_fit(m, &d, None, ctrl) {
                    Ok(f) => fits.push(JsonFit::from(&f)),
                    Err(e) => failures.push(JsonFailure::new(m, &e)),
                }
            }
            FitReport::Mle {
                dataset: d.name().to_string(),
                n: d.len(),
                fits,
                failures,
            }
        }
        Method::Mom => {
            let mut fits = Vec::new();
            for &m in &models {
                match mom_fit(m, &d) {
                    Ok(f) => fits.push(JsonMom::from(&f)),
                    Err(e) => failures.push(JsonFailure::new(m, &e)),
                }
            }
            FitReport::Mom {
                dataset: d.name().to_string(),
                n: d.len(),
                fits,
                failures,
            }
        }
    };
    let text = match (&report, a.output) {
        (_, Output::Json) => to_json(&report) + "\n",
        (
            FitReport::Mle {
                dataset,
                n,
                fits,
                failures,
            },
            Output::Text,
        ) => {
            let mut s = format!("{dataset} (n = {n}), maximum likelihood\n");
            fits.iter().for_each(|f| s.push_str(&mle_text(f, false)));
            s + &failures_text(failures)
        }
        (
            FitReport::Mom {
                dataset,
                n,
                fits,
                failures,
            },
            Output::Text,
        ) => {
            let mut s = format!("{dataset} (n = {n}), method of moments\n");
            fits.iter().for_each(|f| s.push_str(&mom_text(f)));
            s + &failures_text(failures)
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| io_err("stdout", e))
}

pub fn compare(a: &CompareArgs, ctrl: SeriesControl, out: &mut impl Write) -> CliResult<()> {
    let models = parse_models(&a.models)?;
    let d = read_dataset(&a.csv)?;
    let c = compare_models(&d, &models, ctrl);
    let report = CompareReport {
        dataset: d.name().to_string(),
        n: d.len(),
        winner: c.winner().map(|w| w.model.name().to_string()),
        ranked: c.ranked.iter().map(JsonFit::from).collect(),
        failures: c
            .failures
            .iter()
            .map(|(m, e)| JsonFailure::new(*m, e))
            .collect(),
    };
    let text = match a.output {
        Output::Json => to_json(&report) + "\n",
        Output::Text => {
            let mut s = format!(
                "{} (n = {}), ranked by AIC; * marks the winner\n",
                report.dataset, report.n
            );
            for (i, f) in report.ranked.iter().enumerate() {
                s.push_str(&mle_text(f, i == 0));
            }
            s + &failures_text(&report.failures)
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| io_err("stdout", e))
}

pub fn sample(a: &SampleArgs, out: &mut impl Write) -> CliResult<()> {
    if a.n == 0 {
        return Err(Error::Domain("n must be at least 1".into()).into());
    }
    let dist = dist_from_flags(a.family, &a.params)?;
    let route = match a.route {
        RouteArg::Definition => Route::Definition,
        RouteArg::Mixture => Route::Mixture,
        RouteArg::Convex => Route::Convex,
    };
    let mut rng = RandomStream::new(a.seed);
    let draws = dist.sample(a.n, route, &mut rng)?;
    let mut w = BufWriter::new(out);
    for x in draws {
        writeln!(w, "{x:?}").map_err(|e| io_err("stdout", e))?;
    }
    w.flush().map_err(|e| io_err("stdout", e))
}

/// Grid of `n` points spanning [1e-9, 1 - 1e-9].
pub fn grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (i as f64 / (n - 1) as f64).clamp(GRID_EDGE, 1.0 - GRID_EDGE))
        .collect()
}

pub fn curve(a: &CurveArgs, ctrl: SeriesControl) -> CliResult<()> {
    if a.grid < 2 {
        return Err(Error::Domain("grid must have at least 2 points".into()).into());
    }
    let mut columns: Vec<(String, Dist)> = Vec::new();
    for s in &a.specs {
        columns.push((s.label.clone(), s.dist));
        if a.patnaik {
            if let Some(g) = s.dist.patnaik() {
                columns.push((format!("patnaik({})", s.label), g));
            }
        }
    }
    let xs = grid(a.grid);
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let mut row = vec![x];
        for (_, d) in &columns {
            row.push(match a.kind {
                Kind::Pdf => d.pdf(x, ctrl)?,
                Kind::Cdf => d.cdf(x, ctrl)?,
            });
        }
        rows.push(row);
    }
    let file = File::create(&a.out).map_err(|e| io_err(&a.out.display().to_string(), e))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    let header = std::iter::once("x".to_string()).chain(columns.iter().map(|(l, _)| l.clone()));
    w.write_record(header)
        .map_err(|e| io_err(&a.out.display().to_string(), e))?;
    for row in rows {
        w.write_record(row.iter().map(|v| format!("{v:?}")))
            .map_err(|e| io_err(&a.out.display().to_string(), e))?;
    }
    w.flush()
        .map_err(|e| io_err(&a.out.display().to_string(), e))
}
