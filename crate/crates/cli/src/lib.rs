//! Library half of the `ncbeta` command-line tool: argument types, data
//! ingestion, distribution dispatch and report formatting.

pub mod args;
pub mod commands;
pub mod data;
pub mod dist;
pub mod numfmt;
pub mod report;

use ncbeta_core::{Error, SeriesControl};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    /// Process exit status: 2 domain, 3 data, 4 I/O, 5 non-convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 4,
            CliError::Core(e) => core_exit_code(e),
        }
    }
}

fn core_exit_code(e: &Error) -> i32 {
    match e {
        Error::Data(_) => 3,
        Error::AtObservation { source, .. } => core_exit_code(source),
        e if e.is_numerical() => 5,
        _ => 2,
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Series control from `NCBETA_TOL` / `NCBETA_MAXITER`, falling back to the defaults.
pub fn series_control_from_env() -> CliResult<SeriesControl> {
    let d = SeriesControl::default();
    let read = |name: &str| std::env::var(name).ok().filter(|v| !v.trim().is_empty());
    let tol = match read("NCBETA_TOL") {
        Some(v) => v
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::Domain(format!("NCBETA_TOL is not a number: {v}")))?,
        None => d.tol,
    };
    let maxiter = match read("NCBETA_MAXITER") {
        Some(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Domain(format!("NCBETA_MAXITER is not a positive integer: {v}")))?,
        None => d.maxiter,
    };
    Ok(SeriesControl::new(tol, maxiter)?)
}
