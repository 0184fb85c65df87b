//! Phase accumulation and state evolution under the pulse train.
//!
//! For ideal δ pulses the interaction-picture Hamiltonian is `h(t)S(t)Ĵz`,
//! diagonal at every instant, so time ordering is trivial and the whole
//! interrogation reduces to a single Ĵz rotation by the accumulated phase.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sequence::{pulse_times, NoiseTrajectory, PulseSequence, SequencePhase, SignalParams};
use crate::spin::{rotation_unitary, Axis, QuantumState, SpinSystem, C64};

/// Phases accumulated over one interrogation window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAccumulation {
    /// Ĵz rotation angle in the interaction picture.
    pub phi1: f64,
    /// Ĵy rotation angle; zero for δ-pulse trains.
    pub phi2: f64,
    /// Net Ĵx rotation, L·π.
    pub alpha: f64,
    pub pulse_count: usize,
}

/// Anything that fixes the Ĵz rotation angle applied by [`evolve_lockin`].
pub trait LockinPhase {
    fn imprinted_phase(&self) -> f64;
}

impl LockinPhase for f64 {
    fn imprinted_phase(&self) -> f64 {
        *self
    }
}

impl LockinPhase for PhaseAccumulation {
    fn imprinted_phase(&self) -> f64 {
        self.phi1
    }
}

/// Segment boundaries `[0, t_1, ..., t_L, T]`.
fn segment_edges(seq: &PulseSequence) -> Vec<f64> {
    let mut edges = Vec::with_capacity(seq.pulse_count() + 2);
    edges.push(0.0);
    edges.extend(pulse_times(seq));
    edges.push(seq.window());
    edges
}

fn check_coverage(seq: &PulseSequence, noise: &NoiseTrajectory) -> Result<()> {
    let window = seq.window();
    if noise.covered() < window * (1.0 - 1e-9) {
        return Err(Error::GridMismatch {
            covered: noise.covered(),
            window,
        });
    }
    Ok(())
}

/// Square-wave-weighted noise integral ∫₀ᵀ h(t)N(t) dt, exact for
/// piecewise-constant trajectories.
pub fn noise_phase(seq: &PulseSequence, noise: &NoiseTrajectory) -> Result<f64> {
    check_coverage(seq, noise)?;
    let prefix = noise.prefix_integrals();
    let edges = segment_edges(seq);
    let mut sign = 1.0;
    let mut total = 0.0;
    let mut left = 0.0;
    for w in edges.windows(2) {
        let right = noise.cumulative(&prefix, w[1]);
        total += sign * (right - left);
        left = right;
        sign = -sign;
    }
    Ok(total)
}

/// Exact Φ₁ = ∫₀ᵀ h(t)[S(t) + N(t)] dt, segment by segment in closed form.
pub fn exact_accumulated_phase(
    signal: &SignalParams,
    seq: &PulseSequence,
    noise: Option<&NoiseTrajectory>,
) -> Result<PhaseAccumulation> {
    let edges = segment_edges(seq);
    let mut sign = 1.0;
    let mut phi1 = 0.0;
    for w in edges.windows(2) {
        phi1 += sign * signal.integral(w[0], w[1]);
        sign = -sign;
    }
    if let Some(tr) = noise {
        phi1 += noise_phase(seq, tr)?;
    }
    let pulse_count = seq.pulse_count();
    Ok(PhaseAccumulation {
        phi1,
        phi2: 0.0,
        alpha: pulse_count as f64 * PI,
        pulse_count,
    })
}

/// Effective-model phase per unit coupling, `g(δ) = φ/s`.
///
/// K0: `(2/π)(1 − cos δT)/δ`, K−1: `(2/π) sin(δT)/δ`.
pub fn effective_phase_factor(delta: f64, window: f64, k_phase: SequencePhase) -> f64 {
    let x = delta * window;
    match k_phase {
        SequencePhase::K0 => {
            if x.abs() < 1e-6 {
                // (1 − cos x)/x → x/2 − x³/24
                2.0 / PI * window * (x / 2.0 - x * x * x / 24.0)
            } else {
                2.0 / PI * 2.0 * (x / 2.0).sin().powi(2) / delta
            }
        }
        SequencePhase::KMinus1 => {
            if x.abs() < 1e-6 {
                2.0 / PI * window * (1.0 - x * x / 6.0)
            } else {
                2.0 / PI * x.sin() / delta
            }
        }
    }
}

/// Effective phase with the regime flag `|δ|/ω ≤ 0.1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivePhase {
    pub phi: f64,
    pub within_validity: bool,
}

/// φ = s·g(ω − ω_e) from the effective lock-in Hamiltonian.
pub fn effective_phase(signal: &SignalParams, seq: &PulseSequence, omega_e: f64) -> EffectivePhase {
    let delta = signal.omega - omega_e;
    EffectivePhase {
        phi: signal.coupling * effective_phase_factor(delta, seq.window(), seq.k_phase()),
        within_validity: delta.abs() / signal.omega <= 0.1,
    }
}

/// Returns exp(−iφĴz)|state⟩.
pub fn evolve_lockin(state: &QuantumState, phase: impl LockinPhase) -> QuantumState {
    let phi = phase.imprinted_phase();
    let j = (state.dim() - 1) as f64 / 2.0;
    state.map_diagonal(|i| C64::from_polar(1.0, -phi * (j - i as f64)))
}

/// Schrödinger-picture evolution: free Ĵz segments with unsigned phases
/// alternating with instantaneous exp(−iπĴx) pulses. Independent of the
/// square-wave bookkeeping used by [`exact_accumulated_phase`].
pub fn evolve_schrodinger_piecewise(
    state: &QuantumState,
    signal: &SignalParams,
    seq: &PulseSequence,
    noise: Option<&NoiseTrajectory>,
) -> Result<QuantumState> {
    let sys = SpinSystem::new(state.dim() - 1)?;
    let pulse = rotation_unitary(&sys, Axis::X, PI);
    let prefix = match noise {
        Some(tr) => {
            check_coverage(seq, tr)?;
            Some((tr, tr.prefix_integrals()))
        }
        None => None,
    };
    let edges = segment_edges(seq);
    let mut psi = state.clone();
    for (n, w) in edges.windows(2).enumerate() {
        let mut theta = signal.integral(w[0], w[1]);
        if let Some((tr, p)) = &prefix {
            theta += tr.cumulative(p, w[1]) - tr.cumulative(p, w[0]);
        }
        psi = evolve_lockin(&psi, theta);
        if n + 1 < edges.len() - 1 {
            psi = pulse.apply(&psi)?;
        }
    }
    Ok(psi)
}

/// Sign relating Schrödinger- and interaction-picture expectations of Ĵaxis
/// after `pulse_count` π pulses about x.
pub fn frame_parity_map(axis: Axis, pulse_count: usize) -> f64 {
    match axis {
        Axis::X => 1.0,
        Axis::Y | Axis::Z => {
            if pulse_count % 2 == 0 {
                1.0
            } else {
                -1.0
            }
        }
    }
}
