//! Readout unitaries and half-population-difference statistics.

use std::f64::consts::FRAC_PI_2;

use crate::error::Result;
use crate::spin::{rotation_unitary, twisting_unitary, Axis, OperatorMatrix, QuantumState, SpinSystem};
use crate::states::StateKind;

/// Moments of Ĵz on a final state.
///
/// `jz_mean` is the interaction-picture value; the laboratory-frame signal is
/// `jz_mean * parity_sign` (see [`MeasurementStats::signed_mean`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementStats {
    pub jz_mean: f64,
    pub jz2_mean: f64,
    pub jz_std: f64,
    /// (−1)^L.
    pub parity_sign: f64,
}

impl MeasurementStats {
    pub fn signed_mean(&self) -> f64 {
        self.jz_mean * self.parity_sign
    }
}

pub(crate) fn parity_sign(pulse_count: usize) -> f64 {
    if pulse_count % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReadoutKind {
    /// exp(−i(π/2)Ĵy).
    Scs,
    /// exp(i(π/2)Ĵx) exp(i(π/2)Ĵz²) exp(i(π/2)Ĵx).
    InteractionBased,
}

impl ReadoutKind {
    /// The readout paired with each probe state.
    pub fn default_for(kind: StateKind) -> Self {
        match kind {
            StateKind::Scs => ReadoutKind::Scs,
            StateKind::Cat | StateKind::Ghz => ReadoutKind::InteractionBased,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ReadoutKind::Scs => "scs",
            ReadoutKind::InteractionBased => "interaction",
        }
    }

    pub fn operator(&self, sys: &SpinSystem) -> OperatorMatrix {
        match self {
            ReadoutKind::Scs => rotation_unitary(sys, Axis::Y, FRAC_PI_2),
            ReadoutKind::InteractionBased => {
                let ux = rotation_unitary(sys, Axis::X, -FRAC_PI_2);
                let tw = twisting_unitary(sys, FRAC_PI_2);
                ux.compose(&tw)
                    .and_then(|m| m.compose(&ux))
                    .expect("same system")
            }
        }
    }
}

impl std::str::FromStr for ReadoutKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "scs" => Ok(ReadoutKind::Scs),
            "interaction" => Ok(ReadoutKind::InteractionBased),
            other => Err(format!("unknown readout `{other}` (expected scs or interaction)")),
        }
    }
}

fn system_of(state: &QuantumState) -> SpinSystem {
    SpinSystem::new(state.dim() - 1).expect("state has at least two amplitudes")
}

pub fn readout_scs(state: &QuantumState) -> Result<QuantumState> {
    ReadoutKind::Scs.operator(&system_of(state)).apply(state)
}

pub fn readout_interaction_based(state: &QuantumState) -> Result<QuantumState> {
    ReadoutKind::InteractionBased
        .operator(&system_of(state))
        .apply(state)
}

/// ⟨Ĵz⟩, ⟨Ĵz²⟩ and the centered spread on a post-readout state.
pub fn measure_halfpop(state: &QuantumState, pulse_count: usize) -> MeasurementStats {
    let j = (state.dim() - 1) as f64 / 2.0;
    let p = state.probabilities();
    let total: f64 = p.iter().sum();
    let m = |i: usize| j - i as f64;
    let mean = p.iter().enumerate().map(|(i, p)| p * m(i)).sum::<f64>() / total;
    let second = p.iter().enumerate().map(|(i, p)| p * m(i) * m(i)).sum::<f64>() / total;
    let var = p
        .iter()
        .enumerate()
        .map(|(i, p)| p * (m(i) - mean).powi(2))
        .sum::<f64>()
        / total;
    MeasurementStats {
        jz_mean: mean,
        jz2_mean: second,
        jz_std: var.max(0.0).sqrt(),
        parity_sign: parity_sign(pulse_count),
    }
}
