use lockin_core::estimation::{
    detuning_scan, noise_mc_average, optimal_precision, scaling_fit, symmetric_grid, validity_sweep, NoiseCurve,
    PrecisionResult,
};
use lockin_core::{NoiseParams, ScanConfig, SignalParams};

use crate::config::{Command, RunConfig};
use crate::error::CliError;
use crate::output::{Cell, Table};
use crate::plot::Series;

/// A finished run: the table plus what to draw from it.
pub struct RunOutput {
    pub table: Table,
    pub title: String,
    pub x_column: &'static str,
    pub y_columns: Vec<&'static str>,
}

impl RunOutput {
    pub fn series(&self) -> Vec<Series> {
        let xs = self.table.column(self.x_column).unwrap_or_default();
        self.y_columns
            .iter()
            .filter_map(|name| {
                let ys = self.table.column(name)?;
                let points = xs
                    .iter()
                    .zip(ys)
                    .map(|(x, y)| (x.unwrap_or(f64::NAN), y.unwrap_or(f64::NAN)))
                    .collect();
                Some(Series {
                    label: name.to_string(),
                    points,
                })
            })
            .collect()
    }
}

pub fn scan_config(cfg: &RunConfig) -> Result<ScanConfig, CliError> {
    let signal = SignalParams::new(cfg.coupling, cfg.omega)?;
    let mut sc = ScanConfig::new(cfg.state, cfg.n, signal, cfg.window, cfg.k).with_symmetric_grid(cfg.range, cfg.points);
    sc.theta = cfg.theta();
    sc.readout = cfg.readout();
    sc.model = cfg.model;
    sc.allow_outside_validity = cfg.allow_outside_validity;
    sc.mc_samples = cfg.mc_samples;
    Ok(sc)
}

pub fn execute(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    if cfg.points == 0 {
        return Err(CliError::Config("points must be at least 1".into()));
    }
    match cfg.command {
        Command::DetuningScan => signal_scan(cfg),
        Command::PrecisionScan => precision_scan(cfg),
        Command::Scaling => scaling(cfg),
        Command::Noise => noise(cfg),
        Command::Validity => validity(cfg),
    }
}

fn scan_rows(result: &PrecisionResult, full: bool) -> Vec<Vec<Cell>> {
    result
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![
                Cell::Real(r.delta),
                Cell::Int(r.pulse_count as i64),
                Cell::Real(r.jz_signed),
                Cell::Real(r.jz_parity_corrected),
                Cell::Real(r.jz_std),
            ];
            if full {
                row.extend([
                    Cell::Prec(r.delta_omega_analytic),
                    Cell::Prec(r.delta_omega_numeric),
                    Cell::Prec(r.delta_b_analytic),
                    Cell::Prec(r.delta_b_numeric),
                ]);
            }
            row
        })
        .collect()
}

fn signal_scan(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let result = detuning_scan(&scan_config(cfg)?)?;
    let mut table = Table::new(&PrecisionResult::COLUMNS[..5]);
    table.rows = scan_rows(&result, false);
    Ok(RunOutput {
        table,
        title: format!("{} N = {}: parity-corrected <Jz>", cfg.state.name(), cfg.n),
        x_column: "delta",
        y_columns: vec!["jz_parity_corrected", "jz_signed"],
    })
}

fn precision_scan(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let sc = scan_config(cfg)?;
    let result = detuning_scan(&sc)?;
    let mut table = Table::new(&PrecisionResult::COLUMNS);
    table.rows = scan_rows(&result, true);
    if cfg.range > 0.0 {
        let opt = optimal_precision(&sc, (cfg.range_min, cfg.range))?;
        table.footer.push(format!(
            "optimum delta_omega = {} at delta = {:.16e}",
            opt.delta_omega, opt.delta_omega_at
        ));
        table.footer.push(format!("optimum delta_b = {} at delta = {:.16e}", opt.delta_b, opt.delta_b_at));
    }
    Ok(RunOutput {
        table,
        title: format!("{} N = {}: precision", cfg.state.name(), cfg.n),
        x_column: "delta",
        y_columns: vec!["delta_omega_numeric", "delta_b_numeric"],
    })
}

fn scaling(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let template = scan_config(cfg)?;
    let fit = scaling_fit(&template, &cfg.n_list.0, (cfg.range_min, cfg.range))?;
    let mut table = Table::new(&[
        "n",
        "delta_omega_min",
        "delta_omega_at",
        "delta_b_min",
        "delta_b_at",
        "ln_n",
        "ln_delta_omega_over_omega",
        "ln_delta_b_over_omega",
    ]);
    for (n, opt) in &fit.optima {
        let ln = |p: lockin_core::Precision| p.value().map_or(f64::NAN, |v| (v / cfg.omega).ln());
        table.rows.push(vec![
            Cell::Int(*n as i64),
            Cell::Prec(opt.delta_omega),
            Cell::Real(opt.delta_omega_at),
            Cell::Prec(opt.delta_b),
            Cell::Real(opt.delta_b_at),
            Cell::Real((*n as f64).ln()),
            Cell::Real(ln(opt.delta_omega)),
            Cell::Real(ln(opt.delta_b)),
        ]);
    }
    for (name, f) in [("delta_omega", &fit.delta_omega), ("delta_b", &fit.delta_b)] {
        table.footer.push(format!(
            "fit {name}: slope = {:.16e}, intercept = {:.16e}, residual_rms = {:.16e}",
            f.slope, f.intercept, f.residual_rms
        ));
    }
    Ok(RunOutput {
        table,
        title: format!("{} scaling: ln(precision/omega) vs ln N", cfg.state.name()),
        x_column: "ln_n",
        y_columns: vec!["ln_delta_omega_over_omega", "ln_delta_b_over_omega"],
    })
}

fn noise(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    let mut sc = scan_config(cfg)?;
    sc.noise = Some(NoiseParams::new(cfg.eta, cfg.grid_step(), cfg.seed)?);
    let curve = noise_mc_average(&sc)?;
    let mut table = Table::new(&NoiseCurve::COLUMNS);
    table.rows = curve
        .rows
        .iter()
        .map(|r| {
            vec![
                Cell::Real(r.delta),
                Cell::Real(r.mean),
                Cell::Real(r.std_error),
                Cell::Real(r.noiseless),
            ]
        })
        .collect();
    Ok(RunOutput {
        table,
        title: format!("{} N = {}: noise eta = {}", cfg.state.name(), cfg.n, cfg.eta),
        x_column: "delta",
        y_columns: vec!["jz_parity_corrected", "jz_noiseless"],
    })
}

fn validity(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    if cfg.range > 0.1 + 1e-12 && !cfg.allow_outside_validity {
        return Err(CliError::Config(format!(
            "range {} exceeds 0.1; pass --allow-outside-validity to sweep beyond it",
            cfg.range
        )));
    }
    let ratios = symmetric_grid(1.0, cfg.range, cfg.points);
    let rows = validity_sweep(&cfg.omegas(), cfg.coupling, cfg.window, cfg.k, &ratios)?;
    let mut table = Table::new(&[
        "omega",
        "delta",
        "delta_over_omega",
        "pulse_count",
        "phi_exact",
        "phi_effective",
        "phi_gap",
    ]);
    table.rows = rows
        .iter()
        .map(|r| {
            vec![
                Cell::Real(r.omega),
                Cell::Real(r.delta),
                Cell::Real(r.delta / r.omega),
                Cell::Int(r.pulse_count as i64),
                Cell::Real(r.phi_exact),
                Cell::Real(r.phi_effective),
                Cell::Real(r.phi_exact - r.phi_effective),
            ]
        })
        .collect();
    Ok(RunOutput {
        table,
        title: "exact vs effective accumulated phase".into(),
        x_column: "delta_over_omega",
        y_columns: vec!["phi_exact", "phi_effective"],
    })
}
