use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use ncbeta_cli::args::{Cli, Command};
use ncbeta_cli::{commands, series_control_from_env, CliResult};

fn run(cli: Cli) -> CliResult<()> {
    let ctrl = series_control_from_env()?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Eval(a) => commands::eval(&a, ctrl, &mut out),
        Command::Fit(a) => commands::fit(&a, ctrl, &mut out),
        Command::Compare(a) => commands::compare(&a, ctrl, &mut out),
        Command::Sample(a) => commands::sample(&a, &mut out),
        Command::Curve(a) => commands::curve(&a, ctrl),
    }?;
    out.flush().ok();
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ncbeta: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
