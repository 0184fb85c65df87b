//! `lockin`: detuning scans, precision scans, scaling fits, noise ensembles
//! and effective-model checks for the many-body quantum lock-in amplifier.

mod commands;
mod config;
mod error;
mod output;
mod plot;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lockin_core::{PhaseModel, ReadoutKind, SequencePhase, StateKind};

use config::{Command, FloatList, NList, RunConfig};
use error::CliError;

const WORKERS_ENV: &str = "LOCKIN_WORKERS";

#[derive(Parser)]
#[command(name = "lockin", version, about = "Many-body quantum lock-in amplifier simulator")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parity-corrected <Jz> versus detuning.
    DetuningScan(RunArgs),
    /// <Jz> plus closed-form and finite-difference precisions versus detuning.
    PrecisionScan(RunArgs),
    /// Optimal precisions for each N and their log-log fits.
    Scaling(RunArgs),
    /// Monte Carlo average of the detuning curve under bounded noise.
    Noise(RunArgs),
    /// Exact square-wave phase against the effective-model phase.
    Validity(RunArgs),
    /// Re-run the configuration echoed in a CSV header (or any config file with a `command` key).
    Replay(ReplayArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` file; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Probe state: scs, cat or ghz.
    #[arg(long)]
    state: Option<StateKind>,
    /// Particle number.
    #[arg(long)]
    n: Option<usize>,
    /// Cat opening angle in radians.
    #[arg(long)]
    theta: Option<f64>,
    /// Interrogation time.
    #[arg(long = "T")]
    window: Option<f64>,
    /// Signal frequency.
    #[arg(long)]
    omega: Option<f64>,
    /// Signal strength s = gamma B.
    #[arg(long)]
    coupling: Option<f64>,
    /// Sequence phase: 0 or -1.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<SequencePhase>,
    /// Half-width of the detuning window as a fraction of omega.
    #[arg(long)]
    range: Option<f64>,
    /// Smallest |delta|/omega considered by optimum searches.
    #[arg(long)]
    range_min: Option<f64>,
    /// Grid points across [-range, range].
    #[arg(long)]
    points: Option<usize>,
    /// Particle numbers for `scaling`: start:stop:step or a comma list.
    #[arg(long)]
    n_list: Option<NList>,
    /// Signal frequencies for `validity`, comma separated.
    #[arg(long)]
    omega_list: Option<FloatList>,
    /// Noise bound.
    #[arg(long)]
    eta: Option<f64>,
    /// Noise cell width (default pi/omega/20).
    #[arg(long)]
    grid_step: Option<f64>,
    /// Master seed for noise trajectories.
    #[arg(long)]
    seed: Option<u64>,
    /// Noise trajectories per detuning.
    #[arg(long)]
    mc_samples: Option<usize>,
    /// Phase model: effective or exact.
    #[arg(long)]
    model: Option<PhaseModel>,
    /// Readout: scs or interaction (default follows the state).
    #[arg(long)]
    readout: Option<ReadoutKind>,
    /// Permit detunings beyond |delta|/omega = 0.1.
    #[arg(long)]
    allow_outside_validity: bool,
    /// Worker threads; 0 uses all cores. Defaults to $LOCKIN_WORKERS.
    #[arg(long)]
    workers: Option<usize>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write an SVG chart next to the CSV.
    #[arg(long)]
    plot: bool,
}

#[derive(Args)]
struct ReplayArgs {
    /// CSV written by lockin, or a config file containing `command = ...`.
    file: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    plot: bool,
    #[arg(long)]
    workers: Option<usize>,
}

fn env_workers(cfg: &mut RunConfig) -> Result<(), CliError> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) if !v.trim().is_empty() => cfg
            .apply("workers", &v)
            .map_err(|e| CliError::Config(format!("{WORKERS_ENV}: {e}"))),
        _ => Ok(()),
    }
}

fn resolve(command: Command, args: RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::new(command);
    env_workers(&mut cfg)?;
    if let Some(path) = &args.config {
        cfg.apply_file(path)?;
        if cfg.command != command {
            return Err(CliError::Config(format!(
                "{} is a `{}` configuration, not `{command}`",
                path.display(),
                cfg.command
            )));
        }
    }
    macro_rules! set {
        ($($field:ident => $target:expr),* $(,)?) => {
            $(if let Some(v) = args.$field { $target = v; })*
        };
    }
    set! {
        state => cfg.state,
        n => cfg.n,
        window => cfg.window,
        omega => cfg.omega,
        coupling => cfg.coupling,
        k => cfg.k,
        range => cfg.range,
        range_min => cfg.range_min,
        points => cfg.points,
        n_list => cfg.n_list,
        eta => cfg.eta,
        seed => cfg.seed,
        mc_samples => cfg.mc_samples,
        model => cfg.model,
        workers => cfg.workers,
    }
    cfg.theta = args.theta.or(cfg.theta);
    cfg.omega_list = args.omega_list.or(cfg.omega_list);
    cfg.grid_step = args.grid_step.or(cfg.grid_step);
    cfg.readout = args.readout.or(cfg.readout);
    cfg.output = args.output.or(cfg.output);
    cfg.allow_outside_validity |= args.allow_outside_validity;
    cfg.plot |= args.plot;
    Ok(cfg)
}

fn resolve_replay(args: ReplayArgs) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.file.display())))?;
    let pairs = config::parse_pairs(&text);
    let command = pairs
        .iter()
        .find(|(k, _)| k == "command")
        .ok_or_else(|| CliError::Config(format!("{} has no `command` entry", args.file.display())))?
        .1
        .parse::<Command>()
        .map_err(CliError::Config)?;
    let mut cfg = RunConfig::new(command);
    env_workers(&mut cfg)?;
    for (k, v) in &pairs {
        cfg.apply(k, v)?;
    }
    // never write over the file being replayed unless asked to
    cfg.output = args.output;
    cfg.plot = args.plot;
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    Ok(cfg)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn run(cfg: RunConfig) -> Result<(), CliError> {
    if cfg.plot && cfg.output.is_none() {
        return Err(CliError::Config("--plot needs --output to place the chart".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| CliError::Config(format!("workers: {e}")))?;
    let result = pool.install(|| commands::execute(&cfg))?;
    let mut header = cfg.pairs();
    header.push(("version", lockin_core::VERSION.to_string()));
    let csv = result.table.to_csv(&header);
    match &cfg.output {
        Some(path) => {
            write_file(path, &csv)?;
            if cfg.plot {
                let svg = plot::render(&result.title, result.x_column, &result.series());
                write_file(&path.with_extension("svg"), &svg)?;
            }
            for line in &result.table.footer {
                eprintln!("{line}");
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(csv.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let cfg = match cli.command {
        Cmd::DetuningScan(a) => resolve(Command::DetuningScan, a),
        Cmd::PrecisionScan(a) => resolve(Command::PrecisionScan, a),
        Cmd::Scaling(a) => resolve(Command::Scaling, a),
        Cmd::Noise(a) => resolve(Command::Noise, a),
        Cmd::Validity(a) => resolve(Command::Validity, a),
        Cmd::Replay(a) => resolve_replay(a),
    };
    match cfg.and_then(run) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lockin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
