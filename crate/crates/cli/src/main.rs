use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ptdd_cli::commands;
use ptdd_cli::config::ExperimentConfig;
use ptdd_cli::presets;
use ptdd_cli::table::{write_atomic, ResultTable};
use ptdd_cli::{CliError, CliResult};
use ptdd_core::engine::Normalization;

#[derive(Parser)]
#[command(name = "ptdd", version, about = "Dynamical decoupling of PT-symmetric qubit evolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every requested sequence at the base point (axes are ignored)
    Simulate(RunArgs),
    /// Run a parameter sweep and write a CSV table
    Sweep(RunArgs),
    /// Print average Hamiltonians of one cycle and check their closed forms
    Magnus(RunArgs),
    /// List built-in presets
    Presets,
    /// Run built-in consistency checks
    Selftest,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment document (key = value lines), applied after --preset
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    preset: Option<String>,
    /// Extra key=value settings, applied last
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    /// Worker threads (0: one per core)
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["per-trial", "post-average"])]
    normalization: Option<String>,
    /// Points per sweep axis, replacing the configured counts
    #[arg(long)]
    points: Option<usize>,
}

impl RunArgs {
    fn load(&self) -> CliResult<ExperimentConfig> {
        let mut cfg = match &self.preset {
            Some(name) => presets::load(name)?,
            None => ExperimentConfig::default(),
        };
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(&path.display().to_string(), e.to_string()))?;
            cfg.apply_text(&text, &path.display().to_string())?;
        }
        cfg.apply_overrides(&self.set)?;
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        if let Some(v) = self.trials {
            cfg.trials = v;
        }
        if let Some(v) = self.workers {
            cfg.workers = v;
        }
        if let Some(v) = &self.out {
            cfg.out = Some(v.clone());
        }
        if let Some(v) = &self.normalization {
            cfg.normalization = Normalization::from_label(v).expect("validated by clap");
        }
        if let Some(n) = self.points {
            if n == 0 {
                return Err(CliError::config("--points", "must be >= 1"));
            }
            cfg.set_resolution(n);
        }
        Ok(cfg)
    }
}

fn emit(cfg: &ExperimentConfig, table: &ResultTable) -> CliResult<()> {
    let text = table.render();
    match &cfg.out {
        Some(path) => {
            write_atomic(path, &text)?;
            eprintln!("wrote {} rows to {}", table.rows.len(), path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn report((text, status): (String, CliResult<()>)) -> CliResult<()> {
    print!("{text}");
    status
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate(args) => {
            let cfg = args.load()?;
            emit(&cfg, &commands::simulate(&cfg)?)
        }
        Command::Sweep(args) => {
            let cfg = args.load()?;
            emit(&cfg, &commands::sweep(&cfg)?)
        }
        Command::Magnus(args) => report(commands::magnus(&args.load()?)),
        Command::Presets => {
            print!("{}", presets::listing());
            Ok(())
        }
        Command::Selftest => report(commands::selftest()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ptdd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
