//! `smx`: scattering amplitudes, S-matrix poles and symmetry checks for
//! one-dimensional non-Hermitian separable potentials.

mod commands;
mod config;
mod error;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use commands::Command;
use config::{Format, Overrides, RunConfig, TolTarget};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "smx", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration; defaults apply to absent fields
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for sweeps
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Tolerance of the subcommand: symmetry threshold, pole tolerance or pairing tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Base seed for random systems
    #[arg(long, global = true)]
    seed: Option<u64>,
}

fn tol_target(command: Command) -> TolTarget {
    match command {
        Command::Classify => TolTarget::Symmetry,
        Command::Pseudosym => TolTarget::Pairing,
        _ => TolTarget::Pole,
    }
}

fn metadata(command: Command, config: &RunConfig) -> Value {
    json!({
        "tool": "smx",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command.name(),
        "model": config.model,
        "grid": config.grid,
        "sweep": config.sweep,
        "tolerances": config.tolerances,
        "seed": config.seed,
        "pseudosym": config.pseudosym,
        "units": { "momentum": commands::MOMENTUM, "length": "L0", "energy": commands::ENERGY },
    })
}

fn execute(cli: Cli) -> CliResult<()> {
    let mut config = RunConfig::load(cli.config.as_deref())?;
    let overrides = Overrides { out: cli.out, format: cli.format, threads: cli.threads, tol: cli.tol, seed: cli.seed };
    config.apply(&overrides, tol_target(cli.command));
    config.validate()?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| commands::run(cli.command, &config))?;

    let text = outcome.table.render(config.output.format, metadata(cli.command, &config));
    match &config.output.path {
        Some(path) => std::fs::write(path, text)?,
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            // a closed downstream pipe (e.g. `| head`) is not a failure
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
            other => other?,
        },
    }
    if outcome.failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(outcome.failed.join(", ")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("smx: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
