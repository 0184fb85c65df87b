use rayon::prelude::*;

use super::{require_even_cat, Pipeline, ScanConfig};
use crate::analytics::{FormulaForm, Precision, PrecisionPair};
use crate::error::Result;
use crate::evolution::{effective_phase, exact_accumulated_phase};
use crate::readout::MeasurementStats;
use crate::sequence::{NoiseTrajectory, PulseSequence, SequencePhase, SignalParams};

/// One detuning of a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionRow {
    pub delta: f64,
    pub pulse_count: usize,
    /// Laboratory-frame ⟨Ĵz⟩, which flips sign with the parity of L.
    pub jz_signed: f64,
    /// (−1)^L-corrected ⟨Ĵz⟩.
    pub jz_parity_corrected: f64,
    pub jz_std: f64,
    pub delta_omega_analytic: Precision,
    pub delta_omega_numeric: Precision,
    pub delta_b_analytic: Precision,
    pub delta_b_numeric: Precision,
}

impl PrecisionRow {
    /// Rows where some precision is undefined are excluded from agreement checks.
    pub fn is_singular(&self) -> bool {
        !(self.delta_omega_analytic.is_finite()
            && self.delta_omega_numeric.is_finite()
            && self.delta_b_analytic.is_finite()
            && self.delta_b_numeric.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PrecisionResult {
    pub rows: Vec<PrecisionRow>,
}

impl PrecisionResult {
    pub const COLUMNS: [&'static str; 9] = [
        "delta",
        "pulse_count",
        "jz_signed",
        "jz_parity_corrected",
        "jz_std",
        "delta_omega_analytic",
        "delta_omega_numeric",
        "delta_b_analytic",
        "delta_b_numeric",
    ];
}

/// Prepare → evolve → read out → measure at one detuning.
pub fn simulate_expectation(
    config: &ScanConfig,
    delta: f64,
    trajectory: Option<&NoiseTrajectory>,
) -> Result<MeasurementStats> {
    Pipeline::new(config)?.simulate(delta, trajectory)
}

/// Closed-form and finite-difference precisions at one detuning.
pub fn numeric_precision(config: &ScanConfig, delta: f64) -> Result<PrecisionPair> {
    Pipeline::new(config)?.numeric_precision(delta)
}

/// Noiseless scan over `config.delta_grid`, one row per detuning.
pub fn detuning_scan(config: &ScanConfig) -> Result<PrecisionResult> {
    config.validate()?;
    if config.delta_grid.is_empty() {
        return Ok(PrecisionResult::default());
    }
    require_even_cat(config)?;
    let pipeline = Pipeline::new(config)?;
    let rows = config
        .delta_grid
        .par_iter()
        .map(|&delta| {
            let stats = pipeline.simulate(delta, None)?;
            let pulse_count = config.sequence_at(delta)?.pulse_count();
            let analytic = pipeline.analytic_precision(delta, FormulaForm::Corrected)?;
            let numeric = pipeline.numeric_precision(delta)?;
            Ok(PrecisionRow {
                delta,
                pulse_count,
                jz_signed: stats.signed_mean(),
                jz_parity_corrected: stats.jz_mean,
                jz_std: stats.jz_std,
                delta_omega_analytic: analytic.delta_omega,
                delta_omega_numeric: numeric.delta_omega,
                delta_b_analytic: analytic.delta_b,
                delta_b_numeric: numeric.delta_b,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PrecisionResult { rows })
}

/// Exact Φ₁ beside the effective Φ₂ at one (ω, δ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityRow {
    pub omega: f64,
    pub delta: f64,
    pub pulse_count: usize,
    pub phi_exact: f64,
    pub phi_effective: f64,
}

/// Φ₁ and Φ₂ over relative detunings `δ/ω` for each signal frequency.
pub fn validity_sweep(
    omegas: &[f64],
    coupling: f64,
    window: f64,
    k_phase: SequencePhase,
    delta_over_omega: &[f64],
) -> Result<Vec<ValidityRow>> {
    let mut rows = Vec::with_capacity(omegas.len() * delta_over_omega.len());
    for &omega in omegas {
        let signal = SignalParams::new(coupling, omega)?;
        for &r in delta_over_omega {
            let delta = r * omega;
            let seq = PulseSequence::from_carrier(omega - delta, k_phase, window)?;
            let exact = exact_accumulated_phase(&signal, &seq, None)?;
            rows.push(ValidityRow {
                omega,
                delta,
                pulse_count: exact.pulse_count,
                phi_exact: exact.phi1,
                phi_effective: effective_phase(&signal, &seq, omega - delta).phi,
            });
        }
    }
    Ok(rows)
}
