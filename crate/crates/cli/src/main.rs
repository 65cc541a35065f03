mod commands;
mod config;
mod error;
mod output;
mod sweep;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bousslab_core::params::Dissipation;
use clap::{Args, Parser, Subcommand};

use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::sweep::Axis;

#[derive(Parser)]
#[command(name = "bousslab", version, about = "Decay experiments for dissipative abcd Boussinesq systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the named presets.
    Presets,
    /// Decay class and frequency thresholds of a system.
    Classify(ClassifyArgs),
    /// Nonlinear pseudo-spectral run from soliton data.
    Simulate(SimulateArgs),
    /// Exact linear evolution of the same data.
    Linear(LinearArgs),
    /// Run a grid of experiments.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SystemArgs {
    /// Named preset (see `bousslab presets`).
    #[arg(long)]
    preset: Option<String>,
    /// complete, partial-u or partial-eta.
    #[arg(long)]
    diss: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// key=value file applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Domain length.
    #[arg(long = "L")]
    length: Option<f64>,
    #[arg(long)]
    dx: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    /// Final time.
    #[arg(long = "T")]
    t_final: Option<f64>,
    /// Soliton centre (default L/2).
    #[arg(long)]
    x0: Option<f64>,
    /// 2/3-rule dealiasing (true/false).
    #[arg(long)]
    dealias: Option<String>,
    /// Robert–Asselin coefficient.
    #[arg(long)]
    asselin: Option<f64>,
    #[arg(long)]
    sample_every: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Every preset, under `--diss` or under both complete and partial-u.
    #[arg(long)]
    all_presets: bool,
    /// Directory for classify.csv; stdout only if absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Also write the final state to final.bin.
    #[arg(long)]
    snapshot: bool,
}

#[derive(Args)]
struct LinearArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Print e-folding times of single modes and write efold.csv.
    #[arg(long)]
    efold: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Axis as key=v1,v2,...; repeat for more axes.
    #[arg(long = "grid")]
    grid: Vec<String>,
    /// Sweep the exact linear evolution instead of the solver.
    #[arg(long)]
    linear: bool,
}

impl SystemArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) -> Result<(), CliError> {
        if let Some(p) = &self.preset {
            cfg.set("preset", p)?;
        }
        if let Some(d) = &self.diss {
            cfg.set("diss", d)?;
        }
        for (key, v) in [("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)] {
            if let Some(v) = v {
                cfg.set(key, &v.to_string())?;
            }
        }
        Ok(())
    }
}

impl RunArgs {
    /// Defaults, then the config file, then explicit flags.
    fn resolve(&self) -> Result<ExperimentConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                ExperimentConfig::parse(&text)?
            }
            None => ExperimentConfig::default(),
        };
        self.system.apply(&mut cfg)?;
        let numbers = [
            ("L", self.length),
            ("dx", self.dx),
            ("dt", self.dt),
            ("T", self.t_final),
            ("x0", self.x0),
            ("asselin", self.asselin),
            ("sample_every", self.sample_every),
        ];
        for (key, v) in numbers {
            if let Some(v) = v {
                cfg.set(key, &v.to_string())?;
            }
        }
        if let Some(v) = &self.dealias {
            cfg.set("dealias", v)?;
        }
        if let Some(out) = &self.out {
            cfg.out = out.clone();
        }
        Ok(cfg)
    }
}

fn report(summary: &commands::RunSummary) -> Result<(), CliError> {
    for w in &summary.warnings {
        eprintln!("warning: {w}");
    }
    for (kind, f) in &summary.fits {
        println!("{:<9} r = {:.4}  C = {:.4}  plateau = {}", kind.id(), f.r, f.c, f.plateau);
    }
    if summary.contaminated {
        return Err(CliError::Contamination(
            "outputs were written but the domain is too short for this T".into(),
        ));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Presets => print!("{}", commands::presets_table()),
        Command::Classify(args) => {
            let specs = if args.all_presets {
                let diss = match &args.system.diss {
                    Some(d) => vec![d.parse::<Dissipation>()?],
                    None => vec![Dissipation::Complete, Dissipation::PartialU],
                };
                commands::all_presets(&diss)
            } else {
                let mut cfg = ExperimentConfig::default();
                args.system.apply(&mut cfg)?;
                vec![(cfg.system_label(), cfg.spec()?)]
            };
            let rows = commands::classify_rows(&specs)?;
            commands::write_classify(std::io::stdout().lock(), &rows)?;
            if let Some(dir) = &args.out {
                fs::create_dir_all(dir)?;
                commands::write_classify(fs::File::create(dir.join("classify.csv"))?, &rows)?;
            }
        }
        Command::Simulate(args) => {
            let cfg = args.run.resolve()?;
            let summary = commands::simulate(&cfg, args.snapshot)?;
            report(&summary)?;
        }
        Command::Linear(args) => {
            let cfg = args.run.resolve()?;
            let summary = commands::linear(&cfg)?;
            if args.efold {
                let rows = commands::e_folding_table(&cfg.spec()?, &[2.5, 5.0, 10.0, 20.0, 40.0]);
                println!("{:>8}{:>14}{:>14}", "xi0", "tau", "tau/xi0^2");
                for &(xi, tau) in &rows {
                    match tau {
                        Some(t) => println!("{xi:>8}{t:>14.4}{:>14.5}", t / (xi * xi)),
                        None => println!("{xi:>8}{:>14}{:>14}", "-", "-"),
                    }
                }
                commands::write_e_folding(&cfg.out.join("efold.csv"), &rows)?;
            }
            report(&summary)?;
        }
        Command::Sweep(args) => {
            let cfg = args.run.resolve()?;
            let axes = args.grid.iter().map(|s| s.parse()).collect::<Result<Vec<Axis>, _>>()?;
            let n = sweep::sweep(&cfg, &axes, args.linear)?;
            println!("{n} runs; summary in {}", cfg.out.join("summary.csv").display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
