//! Run configuration: defaults, `key = value` files and flag overrides.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use lockin_core::{PhaseModel, ReadoutKind, SequencePhase, StateKind};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    DetuningScan,
    PrecisionScan,
    Scaling,
    Noise,
    Validity,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::DetuningScan => "detuning-scan",
            Command::PrecisionScan => "precision-scan",
            Command::Scaling => "scaling",
            Command::Noise => "noise",
            Command::Validity => "validity",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "detuning-scan" => Ok(Command::DetuningScan),
            "precision-scan" => Ok(Command::PrecisionScan),
            "scaling" => Ok(Command::Scaling),
            "noise" => Ok(Command::Noise),
            "validity" => Ok(Command::Validity),
            other => Err(format!("unknown command `{other}`")),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Particle numbers written as `start:stop:step` or a comma list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NList(pub Vec<usize>);

impl FromStr for NList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("`{s}` is not start:stop:step or a comma-separated list");
        let values = if s.contains(':') {
            let parts: Vec<usize> = s
                .split(':')
                .map(|p| p.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            match parts[..] {
                [a, b, step] if step > 0 && a <= b => (a..=b).step_by(step).collect(),
                _ => return Err(bad()),
            }
        } else {
            s.split(',')
                .map(|p| p.trim().parse().map_err(|_| bad()))
                .collect::<Result<Vec<usize>, _>>()?
        };
        if values.is_empty() {
            return Err(bad());
        }
        Ok(NList(values))
    }
}

impl fmt::Display for NList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Comma-separated reals.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|p| p.trim().parse::<f64>().map_err(|_| format!("`{p}` is not a number")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FloatList(values))
    }
}

impl fmt::Display for FloatList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub state: StateKind,
    pub n: usize,
    /// `None` until resolved: π/8 for cat states, 0 otherwise.
    pub theta: Option<f64>,
    pub window: f64,
    pub omega: f64,
    pub coupling: f64,
    pub k: SequencePhase,
    pub range: f64,
    pub range_min: f64,
    pub points: usize,
    pub n_list: NList,
    pub omega_list: Option<FloatList>,
    pub eta: f64,
    pub grid_step: Option<f64>,
    pub seed: u64,
    pub mc_samples: usize,
    pub model: PhaseModel,
    pub readout: Option<ReadoutKind>,
    pub allow_outside_validity: bool,
    pub workers: usize,
    pub output: Option<PathBuf>,
    pub plot: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            state: StateKind::Scs,
            n: 6,
            theta: None,
            window: 2.0 * PI,
            omega: 20.0 * PI,
            coupling: 2.0 * PI,
            k: SequencePhase::K0,
            range: 0.008,
            range_min: 0.0,
            points: 401,
            n_list: NList((1..=10).map(|i| 10 * i).collect()),
            omega_list: None,
            eta: 0.0,
            grid_step: None,
            seed: 0,
            mc_samples: 200,
            model: PhaseModel::Effective,
            readout: None,
            allow_outside_validity: false,
            workers: 0,
            output: None,
            plot: false,
        }
    }

    /// Sets one key from its textual value. Keys mirror the long flag names.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
        where
            T::Err: fmt::Display,
        {
            value
                .parse()
                .map_err(|e: T::Err| CliError::Config(format!("{key}: {e}")))
        }
        let value = value.trim();
        match key {
            "command" => self.command = parse(key, value)?,
            "state" => self.state = parse(key, value)?,
            "n" => self.n = parse(key, value)?,
            "theta" => self.theta = Some(parse(key, value)?),
            "T" => self.window = parse(key, value)?,
            "omega" => self.omega = parse(key, value)?,
            "coupling" => self.coupling = parse(key, value)?,
            "k" => self.k = parse(key, value)?,
            "range" => self.range = parse(key, value)?,
            "range-min" => self.range_min = parse(key, value)?,
            "points" => self.points = parse(key, value)?,
            "n-list" => self.n_list = parse(key, value)?,
            "omega-list" => self.omega_list = Some(parse(key, value)?),
            "eta" => self.eta = parse(key, value)?,
            "grid-step" => self.grid_step = Some(parse(key, value)?),
            "seed" => self.seed = parse(key, value)?,
            "mc-samples" => self.mc_samples = parse(key, value)?,
            "model" => self.model = parse(key, value)?,
            "readout" => self.readout = Some(parse(key, value)?),
            "allow-outside-validity" => self.allow_outside_validity = parse(key, value)?,
            "workers" => self.workers = parse(key, value)?,
            "output" => self.output = Some(PathBuf::from(value)),
            "plot" => self.plot = parse(key, value)?,
            // written into every header; informational only
            "version" => {}
            other => return Err(CliError::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Applies every `key = value` line of a file. Lines may carry a leading
    /// `#`, so CSV headers written by this tool can be read back; reading
    /// stops at the first line that is neither blank, a comment nor a pair.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        for (key, value) in parse_pairs(&text) {
            self.apply(&key, &value)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        }
        Ok(())
    }

    pub fn theta(&self) -> f64 {
        self.theta
            .unwrap_or(if self.state == StateKind::Cat { PI / 8.0 } else { 0.0 })
    }

    pub fn readout(&self) -> ReadoutKind {
        self.readout.unwrap_or(ReadoutKind::default_for(self.state))
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step.unwrap_or(PI / self.omega / 20.0)
    }

    pub fn omegas(&self) -> Vec<f64> {
        self.omega_list
            .as_ref()
            .map(|l| l.0.clone())
            .unwrap_or_else(|| vec![self.omega])
    }

    /// Resolved settings in file order, as echoed into output headers.
    pub fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut out = vec![
            ("command", self.command.to_string()),
            ("state", self.state.name().to_string()),
            ("n", self.n.to_string()),
            ("theta", self.theta().to_string()),
            ("T", self.window.to_string()),
            ("omega", self.omega.to_string()),
            ("coupling", self.coupling.to_string()),
            ("k", self.k.k().to_string()),
            ("range", self.range.to_string()),
            ("range-min", self.range_min.to_string()),
            ("points", self.points.to_string()),
            ("n-list", self.n_list.to_string()),
            ("omega-list", FloatList(self.omegas()).to_string()),
            ("eta", self.eta.to_string()),
            ("grid-step", self.grid_step().to_string()),
            ("seed", self.seed.to_string()),
            ("mc-samples", self.mc_samples.to_string()),
            ("model", self.model.name().to_string()),
            ("readout", self.readout().name().to_string()),
            ("allow-outside-validity", self.allow_outside_validity.to_string()),
            ("workers", self.workers.to_string()),
        ];
        if let Some(p) = &self.output {
            out.push(("output", p.display().to_string()));
        }
        out.push(("plot", self.plot.to_string()));
        out
    }
}

/// `key = value` pairs from a config file or CSV header.
pub fn parse_pairs(text: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for line in text.lines() {
        let body = line.trim().trim_start_matches('#').trim();
        if body.is_empty() {
            continue;
        }
        match body.split_once('=') {
            Some((k, v)) if !k.trim().contains(' ') => out.push((k.trim().to_string(), v.trim().to_string())),
            _ if line.trim_start().starts_with('#') => continue,
            _ => break,
        }
    }
    out
}
