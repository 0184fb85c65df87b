//! Oracle comparisons between competing printed formula variants.

use crate::analytics::coefficients::{coefficient_c_theta, coefficient_c_theta_oracle, CDenominator};
use crate::analytics::moments::{cat_moments, LParity};
use crate::analytics::precision::{
    derivative_factor_corrected, derivative_factor_printed, printed_kminus1_phase,
};
use crate::error::{invalid, Result};
use crate::evolution::{effective_phase_factor, exact_accumulated_phase};
use crate::sequence::{PulseSequence, SequencePhase, SignalParams};

/// Errors of two candidate formulas against an oracle at one particle number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictRow {
    pub n: usize,
    pub error_first: f64,
    pub error_second: f64,
}

impl VerdictRow {
    /// Index (0 or 1) of the candidate closer to the oracle.
    pub fn winner(&self) -> usize {
        usize::from(self.error_second < self.error_first)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub topic: &'static str,
    pub candidates: [&'static str; 2],
    pub rows: Vec<VerdictRow>,
}

impl DiscrepancyReport {
    /// The winning candidate if every row agrees.
    pub fn stable_verdict(&self) -> Option<&'static str> {
        let first = self.rows.first()?.winner();
        self.rows
            .iter()
            .all(|r| r.winner() == first)
            .then_some(self.candidates[first])
    }
}

/// C(θ): 1 + t vs 1 − t denominator against the direct moment sum.
pub fn c_theta_diagnostic(theta: f64, n_values: &[usize]) -> Result<DiscrepancyReport> {
    let main = coefficient_c_theta(theta, CDenominator::OnePlus)?;
    let app = coefficient_c_theta(theta, CDenominator::OneMinus)?;
    let rows = n_values
        .iter()
        .map(|&n| {
            let oracle = coefficient_c_theta_oracle(theta, n)?;
            Ok(VerdictRow {
                n,
                error_first: (main - oracle).abs(),
                error_second: (app - oracle).abs(),
            })
        })
        .collect::<Result<_>>()?;
    Ok(DiscrepancyReport {
        topic: "C(theta) denominator",
        candidates: ["1 + tan^2(theta/2)", "1 - tan^2(theta/2)"],
        rows,
    })
}

/// K−1 phase: `sin(δT)/δ` against the printed `(sin(δT) − 1)/δ`.
///
/// For every N the cat-state ⟨Ĵz⟩ predicted from each candidate phase is
/// compared, in RMS over the detuning grid, with the value obtained from the
/// exact square-wave phase.
pub fn kminus1_phase_diagnostic(
    signal: &SignalParams,
    window: f64,
    theta: f64,
    deltas: &[f64],
    n_values: &[usize],
) -> Result<DiscrepancyReport> {
    let deltas: Vec<f64> = deltas.iter().copied().filter(|d| *d != 0.0).collect();
    if deltas.is_empty() {
        return Err(invalid("deltas", "need at least one nonzero detuning"));
    }
    let mut phases = Vec::with_capacity(deltas.len());
    for &d in &deltas {
        let seq = PulseSequence::from_carrier(signal.omega - d, SequencePhase::KMinus1, window)?;
        let exact = exact_accumulated_phase(signal, &seq, None)?.phi1;
        let corrected = signal.coupling * effective_phase_factor(d, window, SequencePhase::KMinus1);
        let printed = printed_kminus1_phase(signal.coupling, d, window);
        phases.push((exact, corrected, printed));
    }
    let mut rows = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let jz = |phi: f64| -> Result<f64> { Ok(cat_moments(theta, phi, n, LParity::Even)?.stats.jz_mean) };
        let (mut e1, mut e2) = (0.0, 0.0);
        for &(exact, corrected, printed) in &phases {
            let reference = jz(exact)?;
            e1 += (jz(corrected)? - reference).powi(2);
            e2 += (jz(printed)? - reference).powi(2);
        }
        let k = phases.len() as f64;
        rows.push(VerdictRow {
            n,
            error_first: (e1 / k).sqrt(),
            error_second: (e2 / k).sqrt(),
        });
    }
    Ok(DiscrepancyReport {
        topic: "k = -1 accumulated phase",
        candidates: ["sin(dT)/d", "(sin(dT) - 1)/d"],
        rows,
    })
}

/// K0 derivative factor: `cos x + x sin x − 1` against the printed
/// `cos x − x sin x − 1`, both checked against a central difference of the
/// effective phase. Independent of N; reported as a single row with n = 0.
pub fn derivative_factor_diagnostic(window: f64, deltas: &[f64]) -> DiscrepancyReport {
    let (mut e1, mut e2, mut count) = (0.0_f64, 0.0_f64, 0usize);
    for &d in deltas {
        let h = 1e-6 * d.abs().max(1e-3);
        let fd = (effective_phase_factor(d + h, window, SequencePhase::K0)
            - effective_phase_factor(d - h, window, SequencePhase::K0))
            / (2.0 * h);
        let scale = 2.0 / std::f64::consts::PI * window * window;
        let x = d * window;
        e1 = e1.max((scale * derivative_factor_corrected(x) - fd).abs());
        e2 = e2.max((scale * derivative_factor_printed(x) - fd).abs());
        count += 1;
    }
    DiscrepancyReport {
        topic: "k = 0 derivative factor G",
        candidates: ["cos x + x sin x - 1", "cos x - x sin x - 1"],
        rows: if count == 0 {
            Vec::new()
        } else {
            vec![VerdictRow {
                n: 0,
                error_first: e1,
                error_second: e2,
            }]
        },
    }
}
