//! Simulation and analysis of a many-body quantum lock-in amplifier.
//!
//! N two-level bosons in the symmetric Dicke basis are driven by an AC
//! signal while a π-pulse train demodulates it. The crate covers state
//! preparation, exact and effective evolution, readout, closed-form
//! precision formulas, and end-to-end scans and fits.

pub mod analytics;
pub mod error;
pub mod estimation;
pub mod evolution;
pub mod readout;
pub mod sequence;
pub mod spin;
pub mod states;

#[cfg(test)]
mod proptests;

pub use analytics::{FormulaForm, Precision, PrecisionPair};
pub use error::{Error, Result};
pub use estimation::{PhaseModel, PrecisionResult, PrecisionRow, ScanConfig};
pub use evolution::PhaseAccumulation;
pub use readout::{MeasurementStats, ReadoutKind};
pub use sequence::{NoiseParams, NoiseTrajectory, PulseSequence, SequencePhase, SignalParams};
pub use spin::{Axis, OperatorMatrix, QuantumState, SpinSystem};
pub use states::{CatSpec, StateKind};

/// Crate version, echoed into output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
