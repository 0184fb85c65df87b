//! Signal, π-pulse train and bounded noise.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

/// AC signal `s·sin(ωt + β)` coupling to Ĵz, with `s = γB`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalParams {
    pub coupling: f64,
    pub omega: f64,
    pub beta: f64,
}

impl SignalParams {
    pub fn new(coupling: f64, omega: f64) -> Result<Self> {
        Self::with_phase(coupling, omega, 0.0)
    }

    pub fn with_phase(coupling: f64, omega: f64, beta: f64) -> Result<Self> {
        if !(coupling >= 0.0) || !coupling.is_finite() {
            return Err(invalid("coupling", format!("{coupling} must be finite and >= 0")));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(invalid("omega", format!("{omega} must be finite and > 0")));
        }
        if !beta.is_finite() {
            return Err(invalid("beta", "must be finite"));
        }
        Ok(Self { coupling, omega, beta })
    }

    /// Signal value at time `t`.
    pub fn value(&self, t: f64) -> f64 {
        self.coupling * (self.omega * t + self.beta).sin()
    }

    /// ∫ₐᵇ s·sin(ωt + β) dt in closed form.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        self.coupling * ((self.omega * a + self.beta).cos() - (self.omega * b + self.beta).cos())
            / self.omega
    }
}

/// Sequence phase `k`: timing of the pulse train against the signal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequencePhase {
    /// Pulses at (j + ½)τ.
    K0,
    /// Pulses at (j + 1)τ.
    KMinus1,
}

impl SequencePhase {
    pub fn k(&self) -> i32 {
        match self {
            SequencePhase::K0 => 0,
            SequencePhase::KMinus1 => -1,
        }
    }

    /// Offset of the first pulse in units of τ.
    fn first_pulse(&self) -> f64 {
        match self {
            SequencePhase::K0 => 0.5,
            SequencePhase::KMinus1 => 1.0,
        }
    }
}

impl std::str::FromStr for SequencePhase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "0" | "k0" | "K0" => Ok(SequencePhase::K0),
            "-1" | "km1" | "KMinus1" | "kminus1" => Ok(SequencePhase::KMinus1),
            other => Err(format!("unsupported sequence phase `{other}` (expected 0 or -1)")),
        }
    }
}

/// Equidistant ideal π pulses about x with spacing τ over a window T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PulseSequence {
    tau: f64,
    k_phase: SequencePhase,
    window: f64,
}

impl PulseSequence {
    pub fn new(tau: f64, k_phase: SequencePhase, window: f64) -> Result<Self> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(invalid("tau", format!("{tau} must be finite and > 0")));
        }
        if !(window > 0.0) || !window.is_finite() {
            return Err(invalid("window", format!("{window} must be finite and > 0")));
        }
        let seq = Self { tau, k_phase, window };
        if seq.pulse_count() == 0 {
            return Err(invalid(
                "window",
                format!("window {window} holds no pulse at spacing {tau}"),
            ));
        }
        Ok(seq)
    }

    /// Sequence whose carrier ω_e = π/τ is given directly.
    pub fn from_carrier(omega_e: f64, k_phase: SequencePhase, window: f64) -> Result<Self> {
        if !(omega_e > 0.0) || !omega_e.is_finite() {
            return Err(invalid("omega_e", format!("{omega_e} must be finite and > 0")));
        }
        Self::new(PI / omega_e, k_phase, window)
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn k_phase(&self) -> SequencePhase {
        self.k_phase
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    /// ω_e = π/τ.
    pub fn carrier_frequency(&self) -> f64 {
        PI / self.tau
    }

    /// L = floor(T/τ + ½).
    pub fn pulse_count(&self) -> usize {
        (self.window / self.tau + 0.5).floor() as usize
    }

    /// Number of pulses at times ≤ t.
    fn pulses_up_to(&self, t: f64) -> usize {
        let raw = (t / self.tau - self.k_phase.first_pulse()).floor() + 1.0;
        let n = if raw < 0.0 { 0 } else { raw as usize };
        n.min(self.pulse_count())
    }
}

/// Pulse instants `(j + (1+k)/2)τ`, `j = 0..L`, clipped to the window.
pub fn pulse_times(seq: &PulseSequence) -> Vec<f64> {
    let off = seq.k_phase.first_pulse();
    (0..seq.pulse_count())
        .map(|j| ((j as f64 + off) * seq.tau).min(seq.window))
        .collect()
}

/// Square-wave modulation h(t): +1 before the first pulse, flipping at each pulse.
pub fn square_wave(seq: &PulseSequence, t: f64) -> i8 {
    if seq.pulses_up_to(t) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Bounded noise settings: cell values uniform on [−η, η].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseParams {
    pub eta: f64,
    pub grid_step: f64,
    pub seed: u64,
}

impl NoiseParams {
    pub fn new(eta: f64, grid_step: f64, seed: u64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(invalid("eta", format!("{eta} must be finite and >= 0")));
        }
        if !(grid_step > 0.0) || !grid_step.is_finite() {
            return Err(invalid("grid_step", format!("{grid_step} must be finite and > 0")));
        }
        Ok(Self { eta, grid_step, seed })
    }
}

/// Piecewise-constant noise: cell `i` covers `[i·step, (i+1)·step)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseTrajectory {
    grid_step: f64,
    values: Vec<f64>,
}

impl NoiseTrajectory {
    pub fn new(grid_step: f64, values: Vec<f64>) -> Result<Self> {
        if !(grid_step > 0.0) {
            return Err(invalid("grid_step", "must be > 0"));
        }
        Ok(Self { grid_step, values })
    }

    pub fn zeros(grid_step: f64, window: f64) -> Self {
        Self {
            grid_step,
            values: vec![0.0; cell_count(window, grid_step)],
        }
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Right edge of the last cell.
    pub fn covered(&self) -> f64 {
        self.values.len() as f64 * self.grid_step
    }

    /// ∫₀ᵗ N(t') dt' for t inside the covered range.
    pub(crate) fn cumulative(&self, prefix: &[f64], t: f64) -> f64 {
        let k = ((t / self.grid_step).floor().max(0.0) as usize).min(self.values.len());
        let base = prefix[k];
        if k == self.values.len() {
            return base;
        }
        base + self.values[k] * (t - k as f64 * self.grid_step)
    }

    /// Prefix sums of cell integrals, length cells + 1.
    pub(crate) fn prefix_integrals(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.values.len() + 1);
        let mut acc = 0.0;
        out.push(acc);
        for v in &self.values {
            acc += v * self.grid_step;
            out.push(acc);
        }
        out
    }
}

fn cell_count(window: f64, grid_step: f64) -> usize {
    (window / grid_step - 1e-9).ceil().max(1.0) as usize
}

/// One noise trajectory over [0, window] from the master seed.
pub fn sample_noise(params: &NoiseParams, window: f64) -> NoiseTrajectory {
    sample_noise_indexed(params, window, 0)
}

/// Trajectory number `index` of the ensemble rooted at `params.seed`.
///
/// Each index owns its own ChaCha stream, so ensembles do not depend on the
/// order in which trajectories are drawn.
pub fn sample_noise_indexed(params: &NoiseParams, window: f64, index: u64) -> NoiseTrajectory {
    let cells = cell_count(window, params.grid_step);
    if params.eta == 0.0 {
        return NoiseTrajectory::zeros(params.grid_step, window);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(index);
    let values = (0..cells)
        .map(|_| rng.random_range(-params.eta..=params.eta))
        .collect();
    NoiseTrajectory {
        grid_step: params.grid_step,
        values,
    }
}
