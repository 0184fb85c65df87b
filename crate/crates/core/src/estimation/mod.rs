//! End-to-end scans: detuning curves, precisions, optima, fits and noise ensembles.

mod noise;
mod optimum;
mod scan;

use std::f64::consts::PI;

use crate::analytics::{precision_closed_form, FormulaForm, PrecisionFormulaInput, PrecisionPair};
use crate::error::{invalid, Error, Result};
use crate::evolution::{effective_phase_factor, evolve_lockin, exact_accumulated_phase, noise_phase};
use crate::readout::{measure_halfpop, MeasurementStats, ReadoutKind};
use crate::sequence::{NoiseParams, NoiseTrajectory, PulseSequence, SequencePhase, SignalParams};
use crate::spin::{OperatorMatrix, QuantumState, SpinSystem};
use crate::states::{prepare_state, StateKind};

pub use noise::{noise_mc_average, NoiseCurve, NoiseRow};
pub use optimum::{
    linear_fit, optimal_precision, optimal_precision_with, scaling_fit, scaling_fit_with, FitResult, Optimum, OptimumSearch,
    PrecisionSource, ScalingFit,
};
pub use scan::{detuning_scan, numeric_precision, simulate_expectation, validity_sweep, PrecisionResult, PrecisionRow, ValidityRow};

/// How the accumulated phase is obtained for each detuning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum PhaseModel {
    /// φ = s·g(δ) from the effective lock-in Hamiltonian.
    #[default]
    Effective,
    /// Closed-form segment integrals of the actual square-wave-modulated signal.
    Exact,
}

impl std::str::FromStr for PhaseModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "effective" => Ok(PhaseModel::Effective),
            "exact" => Ok(PhaseModel::Exact),
            other => Err(format!("unknown phase model `{other}` (expected effective or exact)")),
        }
    }
}

impl PhaseModel {
    pub fn name(&self) -> &'static str {
        match self {
            PhaseModel::Effective => "effective",
            PhaseModel::Exact => "exact",
        }
    }
}

/// Everything needed to run a detuning scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub state: StateKind,
    /// Cat opening angle; ignored for SCS and GHZ.
    pub theta: f64,
    pub n_particles: usize,
    pub signal: SignalParams,
    pub window: f64,
    pub k_phase: SequencePhase,
    /// Detunings δ = ω − ω_e.
    pub delta_grid: Vec<f64>,
    pub readout: ReadoutKind,
    pub noise: Option<NoiseParams>,
    pub mc_samples: usize,
    pub model: PhaseModel,
    /// Permit |δ|/ω > 0.1, outside the effective-model regime.
    pub allow_outside_validity: bool,
}

impl ScanConfig {
    pub fn new(
        state: StateKind,
        n_particles: usize,
        signal: SignalParams,
        window: f64,
        k_phase: SequencePhase,
    ) -> Self {
        Self {
            state,
            theta: if state == StateKind::Cat { PI / 8.0 } else { 0.0 },
            n_particles,
            signal,
            window,
            k_phase,
            delta_grid: Vec::new(),
            readout: ReadoutKind::default_for(state),
            noise: None,
            mc_samples: 1,
            model: PhaseModel::Effective,
            allow_outside_validity: false,
        }
    }

    /// `points` detunings spread evenly over [−range·ω, range·ω].
    pub fn with_symmetric_grid(mut self, range: f64, points: usize) -> Self {
        self.delta_grid = symmetric_grid(self.signal.omega, range, points);
        self
    }

    /// Noise cell width τ/20 at resonance.
    pub fn default_grid_step(&self) -> f64 {
        PI / self.signal.omega / 20.0
    }

    pub fn sequence_at(&self, delta: f64) -> Result<PulseSequence> {
        PulseSequence::from_carrier(self.signal.omega - delta, self.k_phase, self.window)
    }

    pub fn validate(&self) -> Result<()> {
        SpinSystem::new(self.n_particles)?;
        if !(self.window > 0.0) || !self.window.is_finite() {
            return Err(invalid("window", "must be finite and > 0"));
        }
        if self.state == StateKind::Cat && !(0.0..std::f64::consts::FRAC_PI_2).contains(&self.theta) {
            return Err(invalid("theta", format!("{} is outside [0, π/2)", self.theta)));
        }
        let omega = self.signal.omega;
        for &d in &self.delta_grid {
            if !d.is_finite() {
                return Err(invalid("delta_grid", "contains a non-finite detuning"));
            }
            if !self.allow_outside_validity && d.abs() / omega > 0.1 + 1e-12 {
                return Err(invalid(
                    "delta_grid",
                    format!("|δ|/ω = {} exceeds 0.1; set the override to scan beyond it", d.abs() / omega),
                ));
            }
            if d >= omega {
                return Err(invalid("delta_grid", "detuning leaves no positive carrier frequency"));
            }
            self.sequence_at(d)?;
        }
        if let Some(noise) = &self.noise {
            let tightest = self
                .delta_grid
                .iter()
                .map(|&d| PI / (omega - d))
                .fold(PI / omega, f64::min);
            if noise.grid_step > tightest / 10.0 * (1.0 + 1e-12) {
                return Err(invalid(
                    "grid_step",
                    format!("{} exceeds τ/10 = {}", noise.grid_step, tightest / 10.0),
                ));
            }
        }
        Ok(())
    }
}

/// `points` detunings evenly spread over [−range·ω, range·ω], exactly antisymmetric.
pub fn symmetric_grid(omega: f64, range: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points)
            .map(|i| {
                let u = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
                // keep the grid exactly antisymmetric
                let v = range * omega * u;
                if 2 * i + 1 == points {
                    0.0
                } else {
                    v
                }
            })
            .collect(),
    }
}

/// Prepared input state and readout operator for one configuration.
///
/// Built once per scan; evaluating a phase is then a diagonal update and a
/// single matrix-vector product.
#[derive(Debug, Clone)]
pub struct Pipeline {
    config: ScanConfig,
    input: QuantumState,
    readout: OperatorMatrix,
}

impl Pipeline {
    pub fn new(config: &ScanConfig) -> Result<Self> {
        let sys = SpinSystem::new(config.n_particles)?;
        let input = prepare_state(config.state, &sys, config.theta)?;
        let readout = config.readout.operator(&sys);
        let mut config = config.clone();
        config.delta_grid = Vec::new();
        Ok(Self { config, input, readout })
    }

    pub fn config(&self) -> &ScanConfig {
        &self.config
    }

    /// Statistics after imprinting φ and reading out.
    pub fn measure_phase(&self, phi: f64, pulse_count: usize) -> MeasurementStats {
        let evolved = evolve_lockin(&self.input, phi);
        let out = self.readout.apply(&evolved).expect("pipeline dimensions agree");
        measure_halfpop(&out, pulse_count)
    }

    /// Accumulated phase and pulse count at detuning δ under the configured model.
    pub fn phase_at(&self, delta: f64, noise: Option<&NoiseTrajectory>) -> Result<(f64, usize)> {
        let seq = self.config.sequence_at(delta)?;
        let phi = match self.config.model {
            PhaseModel::Exact => exact_accumulated_phase(&self.config.signal, &seq, noise)?.phi1,
            PhaseModel::Effective => {
                let base = self.config.signal.coupling
                    * effective_phase_factor(delta, self.config.window, self.config.k_phase);
                match noise {
                    Some(tr) => base + noise_phase(&seq, tr)?,
                    None => base,
                }
            }
        };
        Ok((phi, seq.pulse_count()))
    }

    pub fn simulate(&self, delta: f64, noise: Option<&NoiseTrajectory>) -> Result<MeasurementStats> {
        let (phi, l) = self.phase_at(delta, noise)?;
        Ok(self.measure_phase(phi, l))
    }

    /// Parity-corrected effective-model ⟨Ĵz⟩ at carrier ω_e and coupling s.
    fn effective_mean(&self, omega_e: f64, coupling: f64) -> f64 {
        let delta = self.config.signal.omega - omega_e;
        let phi = coupling * effective_phase_factor(delta, self.config.window, self.config.k_phase);
        self.measure_phase(phi, 0).jz_mean
    }

    /// Central-difference error propagation on the effective model.
    pub fn numeric_precision(&self, delta: f64) -> Result<PrecisionPair> {
        use crate::analytics::Precision;
        let omega_e = self.config.signal.omega - delta;
        let s = self.config.signal.coupling;
        if !(s > 0.0) {
            return Err(invalid("coupling", "precision needs a positive coupling"));
        }
        let phi = s * effective_phase_factor(delta, self.config.window, self.config.k_phase);
        let spread = self.measure_phase(phi, 0).jz_std;
        let h_w = (1e-5 * delta.abs()).max(1e-7);
        let d_w = (self.effective_mean(omega_e + h_w, s) - self.effective_mean(omega_e - h_w, s)) / (2.0 * h_w);
        let h_s = 1e-6 * s;
        let d_s = (self.effective_mean(omega_e, s + h_s) - self.effective_mean(omega_e, s - h_s)) / (2.0 * h_s);
        let prec = |d: f64| {
            if d.abs() < 1e-12 {
                Precision::Unmeasurable
            } else {
                Precision::ratio(spread, d)
            }
        };
        Ok(PrecisionPair {
            delta_omega: prec(d_w),
            delta_b: prec(d_s),
        })
    }

    /// Closed-form precision for this configuration at δ.
    pub fn analytic_precision(&self, delta: f64, form: FormulaForm) -> Result<PrecisionPair> {
        let c = &self.config;
        precision_closed_form(
            &PrecisionFormulaInput {
                state_kind: c.state,
                theta: c.theta,
                n_particles: c.n_particles,
                coupling: c.signal.coupling,
                window: c.window,
                delta,
                k_phase: c.k_phase,
            },
            form,
        )
    }
}

pub(crate) fn require_even_cat(config: &ScanConfig) -> Result<()> {
    if config.state == StateKind::Cat && config.n_particles % 2 != 0 {
        return Err(Error::OddParticleNumber(config.n_particles));
    }
    Ok(())
}
