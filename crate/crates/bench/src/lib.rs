//! Shared fixtures for the benchmarks.

use std::f64::consts::PI;

use lockin_core::{ScanConfig, SequencePhase, SignalParams, StateKind};

/// T = 2π, ω = 20π, s = 2π, quadrature sequence.
pub fn reference_config(state: StateKind, n: usize, points: usize) -> ScanConfig {
    let signal = SignalParams::new(2.0 * PI, 20.0 * PI).expect("valid signal");
    ScanConfig::new(state, n, signal, 2.0 * PI, SequencePhase::K0).with_symmetric_grid(0.008, points)
}
