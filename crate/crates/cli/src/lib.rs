//! Command-line front end for the anyondec simulator.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod svg;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use config::{Format, RunConfig};
use error::CliError;

/// Environment variable naming the output directory when neither `--out`
/// nor `output.dir` is given.
pub const OUT_DIR_ENV: &str = "ANYONDEC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "anyondec",
    version,
    about = "Decoherence of a double-antidot anyon qubit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// JSON run configuration.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output directory [default: output.dir, then $ANYONDEC_OUT_DIR, then .]
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    /// Result file format [default: output.format, then csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads [default: jobs, then one per core]
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,

    /// Purity difference reported as the divergence point by `compare`
    #[arg(long, global = true, value_name = "X")]
    pub threshold: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Γ, λ, ω (1/s), ħΓ/Ω, ω_c (1/s) and A at the configured point.
    Rates,
    /// Markovian Bloch trajectory: t_s, x, y, z, purity.
    Evolve,
    /// Short-time integral, exponent and purities with regime labels.
    Shorttime,
    /// Markovian and short-time purities on one grid, plus an SVG plot.
    Compare,
    /// Long-format table over the `sweep` block.
    Sweep,
}

impl Command {
    fn stem(&self) -> &'static str {
        match self {
            Command::Rates => "rates",
            Command::Evolve => "evolve",
            Command::Shorttime => "shorttime",
            Command::Compare => "compare",
            Command::Sweep => "sweep",
        }
    }
}

/// Configuration with command-line overrides applied.
pub fn resolve(cli: &Cli) -> Result<(RunConfig, PathBuf), CliError> {
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config {
        context: "--config".into(),
        message: "a configuration file is required".into(),
    })?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(f) = cli.format {
        cfg.output.format = f;
    }
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    }
    if let Some(t) = cli.threshold {
        if !(t > 0.0 && t.is_finite()) {
            return Err(CliError::Config {
                context: "--threshold".into(),
                message: format!("must be finite and > 0, got {t}"),
            });
        }
        cfg.threshold = Some(t);
    }
    let dir = cli
        .out
        .clone()
        .or_else(|| cfg.output.dir.clone())
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    Ok((cfg, dir))
}

/// Runs one command and returns the files it wrote.
pub fn execute(command: Command, cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Config {
            context: "jobs".into(),
            message: e.to_string(),
        })?;
    pool.install(|| dispatch(command, cfg, dir))
}

fn dispatch(command: Command, cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let json = cfg.output.format == Format::Json;
    let ext = if json { "json" } else { "csv" };
    let file = output::target(dir, command.stem(), ext);
    let mut written = vec![file.clone()];
    match command {
        Command::Rates => {
            let table = commands::rates(cfg)?;
            for (name, v) in commands::RatesTable::HEADER.iter().zip(table.values()) {
                println!("{name:>22}  {}", output::num(v));
            }
            output::ensure_dir(dir)?;
            if json {
                output::write_json(&file, &table)?;
            } else {
                output::rates_csv(&file, &table)?;
            }
        }
        Command::Evolve => {
            let tr = commands::trajectory(cfg)?;
            output::ensure_dir(dir)?;
            if json {
                output::write_json(&file, &tr)?;
            } else {
                output::trajectory_csv(&file, &tr)?;
            }
        }
        Command::Shorttime => {
            let rows = commands::shorttime(cfg)?;
            output::ensure_dir(dir)?;
            if json {
                output::write_json(&file, &rows)?;
            } else {
                output::shorttime_csv(&file, &rows)?;
            }
        }
        Command::Compare => {
            let report = commands::comparison(cfg)?;
            output::ensure_dir(dir)?;
            if json {
                output::write_json(&file, &report)?;
            } else {
                output::compare_csv(&file, &report)?;
            }
            if cfg.output.plot {
                let svg = output::target(dir, "compare", "svg");
                std::fs::write(&svg, svg::render(&report, cfg.grid.spacing)).map_err(|e| {
                    CliError::Io {
                        path: svg.clone(),
                        source: e,
                    }
                })?;
                written.push(svg);
            }
            if let Some(t) = report.divergence_time {
                println!(
                    "curves diverge beyond threshold at t = {} s",
                    output::num(t)
                );
            }
        }
        Command::Sweep => {
            let rows = commands::sweep(cfg)?;
            output::ensure_dir(dir)?;
            if json {
                output::write_json(&file, &rows)?;
            } else {
                output::sweep_csv(&file, &rows)?;
            }
        }
    }
    Ok(written)
}
