use rayon::prelude::*;

use super::{require_even_cat, symmetric_grid, Pipeline, ScanConfig};
use crate::analytics::{k0_frequency_limit, kminus1_field_limit, FormulaForm, Precision, PrecisionPair};
use crate::error::{invalid, Error, Result};
use crate::sequence::SequencePhase;

/// Where precision values come from during an optimum search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrecisionSource {
    /// Finite differences of the simulated effective-model signal.
    Numeric,
    /// Closed-form expressions.
    Analytic(FormulaForm),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimumSearch {
    pub points: usize,
    pub source: PrecisionSource,
    pub refine_iterations: usize,
}

impl Default for OptimumSearch {
    fn default() -> Self {
        Self {
            points: 2001,
            source: PrecisionSource::Numeric,
            refine_iterations: 60,
        }
    }
}

/// Best Δω and γΔB over a detuning window, with their locations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Optimum {
    pub delta_omega: Precision,
    pub delta_omega_at: f64,
    pub delta_b: Precision,
    pub delta_b_at: f64,
}

fn evaluate(p: &Pipeline, source: PrecisionSource, delta: f64) -> Result<PrecisionPair> {
    match source {
        PrecisionSource::Numeric => p.numeric_precision(delta),
        PrecisionSource::Analytic(form) => p.analytic_precision(delta, form),
    }
}

/// Golden-section minimization of `f` on [a, b].
fn golden_section(mut a: f64, mut b: f64, iterations: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..iterations {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Minimum of Δω and γΔB over `range.0 ≤ |δ|/ω ≤ range.1` using the default search.
pub fn optimal_precision(config: &ScanConfig, range: (f64, f64)) -> Result<Optimum> {
    optimal_precision_with(config, range, &OptimumSearch::default())
}

pub fn optimal_precision_with(config: &ScanConfig, range: (f64, f64), search: &OptimumSearch) -> Result<Optimum> {
    let (lo, hi) = range;
    if !(0.0 <= lo && lo <= hi) || !hi.is_finite() {
        return Err(invalid("range", format!("[{lo}, {hi}] is not an interval in [0, ∞)")));
    }
    if hi > 0.1 + 1e-12 && !config.allow_outside_validity {
        return Err(invalid("range", format!("upper bound {hi} exceeds the validity regime 0.1")));
    }
    require_even_cat(config)?;
    let pipeline = Pipeline::new(config)?;
    if hi == 0.0 {
        return degenerate_optimum(config);
    }
    if search.points < 3 {
        return Err(invalid("points", "an optimum search needs at least 3 grid points"));
    }
    let omega = config.signal.omega;
    let grid: Vec<f64> = symmetric_grid(omega, hi, search.points)
        .into_iter()
        .filter(|d| d.abs() >= lo * omega)
        .collect();
    if grid.is_empty() {
        return Err(invalid("range", "no grid point falls inside the requested window"));
    }
    let spacing = 2.0 * hi * omega / (search.points - 1) as f64;
    let values = grid
        .par_iter()
        .map(|&d| evaluate(&pipeline, search.source, d))
        .collect::<Result<Vec<_>>>()?;

    let refine = |pick: fn(&PrecisionPair) -> Precision| -> (Precision, f64) {
        let scores: Vec<f64> = values.iter().map(|v| pick(v).or_infinity()).collect();
        let best = (0..scores.len())
            .min_by(|&i, &j| scores[i].total_cmp(&scores[j]))
            .expect("grid is non-empty");
        if !scores[best].is_finite() {
            return (pick(&values[best]), grid[best]);
        }
        let center = grid[best];
        let mut a = if best > 0 { grid[best - 1] } else { center };
        let mut b = if best + 1 < grid.len() { grid[best + 1] } else { center };
        // never step onto or across the lock-in point from an off-resonant optimum
        let guard = 0.05 * spacing;
        if center > 0.0 && a <= 0.0 {
            a = guard.min(center);
        }
        if center < 0.0 && b >= 0.0 {
            b = (-guard).max(center);
        }
        let f = |d: f64| {
            if d.abs() < lo * omega {
                return f64::INFINITY;
            }
            evaluate(&pipeline, search.source, d)
                .map(|v| pick(&v).or_infinity())
                .unwrap_or(f64::INFINITY)
        };
        let (arg, val) = golden_section(a, b, search.refine_iterations, f);
        if val < scores[best] {
            (Precision::Finite(val), arg)
        } else {
            (Precision::Finite(scores[best]), center)
        }
    };
    let (delta_omega, delta_omega_at) = refine(|p| p.delta_omega);
    let (delta_b, delta_b_at) = refine(|p| p.delta_b);
    Ok(Optimum {
        delta_omega,
        delta_omega_at,
        delta_b,
        delta_b_at,
    })
}

/// The [0, 0] window: δ → 0 limits in closed form.
fn degenerate_optimum(config: &ScanConfig) -> Result<Optimum> {
    let (kind, theta, n, s, t) = (
        config.state,
        config.theta,
        config.n_particles,
        config.signal.coupling,
        config.window,
    );
    let (delta_omega, delta_b) = match config.k_phase {
        SequencePhase::K0 => (
            k0_frequency_limit(kind, theta, n, s, t, FormulaForm::Corrected)?,
            Precision::Divergent,
        ),
        SequencePhase::KMinus1 => (Precision::Divergent, kminus1_field_limit(kind, theta, n, s, t)?),
    };
    Ok(Optimum {
        delta_omega,
        delta_omega_at: 0.0,
        delta_b,
        delta_b_at: 0.0,
    })
}

/// Least-squares line through (ln N, ln(Δ/ω)).
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
    pub n_values: Vec<usize>,
}

/// Ordinary least squares `y = slope·x + intercept`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() {
        return Err(Error::DimensionMismatch {
            expected: xs.len(),
            found: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            found: xs.len(),
        });
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("xs", "all abscissae are equal"));
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = (xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum::<f64>()
        / k)
        .sqrt();
    Ok((slope, intercept, rms))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub delta_omega: FitResult,
    pub delta_b: FitResult,
    pub optima: Vec<(usize, Optimum)>,
}

/// Optimal precisions for each N and their log-log fits.
pub fn scaling_fit(template: &ScanConfig, n_values: &[usize], range: (f64, f64)) -> Result<ScalingFit> {
    scaling_fit_with(template, n_values, range, &OptimumSearch::default())
}

pub fn scaling_fit_with(
    template: &ScanConfig,
    n_values: &[usize],
    range: (f64, f64),
    search: &OptimumSearch,
) -> Result<ScalingFit> {
    if n_values.len() < 5 {
        return Err(Error::TooFewPoints {
            needed: 5,
            found: n_values.len(),
        });
    }
    let omega = template.signal.omega;
    let mut optima = Vec::with_capacity(n_values.len());
    let (mut xs, mut yw, mut yb) = (Vec::new(), Vec::new(), Vec::new());
    for &n in n_values {
        let mut cfg = template.clone();
        cfg.n_particles = n;
        let opt = optimal_precision_with(&cfg, range, search)?;
        let (w, b) = match (opt.delta_omega, opt.delta_b) {
            (Precision::Finite(w), Precision::Finite(b)) => (w, b),
            _ => {
                return Err(Error::IllConditioned(format!(
                    "no finite optimum at N = {n}; the window may only hold singular points"
                )))
            }
        };
        xs.push((n as f64).ln());
        yw.push((w / omega).ln());
        yb.push((b / omega).ln());
        optima.push((n, opt));
    }
    let fit = |ys: &[f64]| -> Result<FitResult> {
        let (slope, intercept, residual_rms) = linear_fit(&xs, ys)?;
        Ok(FitResult {
            slope,
            intercept,
            residual_rms,
            n_values: n_values.to_vec(),
        })
    };
    Ok(ScalingFit {
        delta_omega: fit(&yw)?,
        delta_b: fit(&yb)?,
        optima,
    })
}
