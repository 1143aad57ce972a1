//! `champagne`: classical and quantum monodromy of the champagne bottle from
//! the command line.
//!
//! Exit status: 0 success, 2 bad config, 3 numerical failure, 4 I/O.

mod commands;
mod config;
mod error;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{LoopKind, LoopPreset, RunConfig};
use crate::error::{CliError, Result};
use crate::output::OutputDir;

#[derive(Parser)]
#[command(name = "champagne", version, about = "Monodromy of the champagne bottle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical values, image boundary and the potential profile.
    ClassicalScan(Common),
    /// Winding of the rotation angle around a loop of regular values.
    ClassicalMonodromy(Common),
    /// Joint spectrum of (Ĥ, Ĵ) and the eigenvalues of Ĥ + iεĴ.
    QuantumSpectrum(Common),
    /// Cell transport on the joint (or spectral) lattice around a loop.
    QuantumMonodromy(Common),
}

#[derive(Args)]
struct Common {
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Existing output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    emax: Option<f64>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long)]
    radius: Option<f64>,
    /// Largest |m|, or `auto`.
    #[arg(long)]
    mmax: Option<String>,
    /// Worker threads (0: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Overwrite existing output files.
    #[arg(long)]
    force: bool,
    /// Seed of the Monte Carlo level-count estimate.
    #[arg(long)]
    seed: Option<u64>,
    /// Loop preset: enclosing or non-enclosing.
    #[arg(long = "loop")]
    loop_preset: Option<LoopPreset>,
    /// Transport on χ⁻¹ of the P_ε spectrum instead of the joint spectrum.
    #[arg(long)]
    spectral: bool,
}

impl Common {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        let flags: [(&str, Option<String>); 10] = [
            ("h", self.h.map(|v| v.to_string())),
            ("epsilon", self.epsilon.map(|v| v.to_string())),
            ("e_max", self.emax.map(|v| v.to_string())),
            ("grid_n", self.grid_n.map(|v| v.to_string())),
            ("radius", self.radius.map(|v| v.to_string())),
            ("m_max", self.mmax.clone()),
            ("threads", self.threads.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("loop", self.loop_preset.map(|v| v.to_string())),
            ("spectral", self.spectral.then(|| "true".to_string())),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, &v).map_err(CliError::Config)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

type Runner = fn(&RunConfig, &OutputDir) -> Result<commands::Summary>;

fn run(cli: Cli) -> Result<()> {
    let (name, common, kind, cmd): (&str, &Common, LoopKind, Runner) = match &cli.command {
        Command::ClassicalScan(c) => ("classical-scan", c, LoopKind::Classical, commands::classical_scan),
        Command::ClassicalMonodromy(c) => (
            "classical-monodromy",
            c,
            LoopKind::Classical,
            commands::classical_monodromy,
        ),
        Command::QuantumSpectrum(c) => ("quantum-spectrum", c, LoopKind::Quantum, commands::quantum_spectrum),
        Command::QuantumMonodromy(c) => ("quantum-monodromy", c, LoopKind::Quantum, commands::quantum_monodromy),
    };
    let cfg = common.resolve()?;
    let out = OutputDir::new(&common.out, common.force, name, &cfg.echo(kind))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let summary = pool.install(|| cmd(&cfg, &out))?;
    for line in &summary.lines {
        println!("{line}");
    }
    for f in &summary.files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
