//! Error-propagation precisions Δω and γΔB in closed form.
//!
//! Both follow from φ = s·g(δ): with Ã = ΔĴz/|∂⟨Ĵz⟩/∂φ|,
//! Δω = Ã/(s|g′(δ)|) and γΔB = Ã/|g(δ)|.

use std::f64::consts::PI;

use crate::analytics::moments::{moments_with_derivative, LParity};
use crate::error::{invalid, Error, Result};
use crate::evolution::effective_phase_factor;
use crate::sequence::SequencePhase;
use crate::states::StateKind;

/// A precision value, or the reason there is none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Precision {
    Finite(f64),
    /// The response has no sensitivity in the limit (e.g. ΔB at the K0 lock-in point).
    Divergent,
    /// The derivative vanished numerically at this point.
    Unmeasurable,
}

impl Precision {
    pub fn value(&self) -> Option<f64> {
        match self {
            Precision::Finite(v) => Some(*v),
            _ => None,
        }
    }

    /// Finite values as is; everything else as +∞ (for minimization).
    pub fn or_infinity(&self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Precision::Finite(_))
    }

    pub(crate) fn ratio(num: f64, den: f64) -> Self {
        if den == 0.0 {
            return Precision::Divergent;
        }
        let v = num / den.abs();
        if v.is_finite() {
            Precision::Finite(v)
        } else {
            Precision::Divergent
        }
    }

    fn scale(self, factor: f64) -> Self {
        match self {
            Precision::Finite(v) => Precision::ratio(v, 1.0 / factor),
            other => other,
        }
    }
}

impl std::fmt::Display for Precision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Precision::Finite(v) => write!(f, "{v:.16e}"),
            Precision::Divergent => f.write_str("divergent"),
            Precision::Unmeasurable => f.write_str("unmeasurable"),
        }
    }
}

/// Which derivative factor to use for the K0 frequency precision.
///
/// `Printed` keeps `cos x − x sin x − 1`; `Corrected` uses
/// `cos x + x sin x − 1`, the actual δ-derivative of `(1 − cos x)/δ`.
/// The K−1 precisions are the same in both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FormulaForm {
    #[default]
    Corrected,
    Printed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionFormulaInput {
    pub state_kind: StateKind,
    /// Cat opening angle; ignored for SCS and GHZ.
    pub theta: f64,
    pub n_particles: usize,
    pub coupling: f64,
    pub window: f64,
    /// δ = ω − ω_e.
    pub delta: f64,
    pub k_phase: SequencePhase,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionPair {
    pub delta_omega: Precision,
    /// γΔB, i.e. the coupling uncertainty Δs.
    pub delta_b: Precision,
}

fn series(x2: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x2 + c)
}

/// `(cos x + x sin x − 1)/x²`.
pub fn derivative_factor_corrected(x: f64) -> f64 {
    if x.abs() < 0.05 {
        series(x * x, &[0.5, -1.0 / 8.0, 1.0 / 144.0, -1.0 / 5760.0, 1.0 / 403200.0])
    } else {
        (x.cos() + x * x.sin() - 1.0) / (x * x)
    }
}

/// `(cos x − x sin x − 1)/x²`, the printed variant.
pub fn derivative_factor_printed(x: f64) -> f64 {
    if x.abs() < 0.05 {
        series(
            x * x,
            &[-1.5, 5.0 / 24.0, -7.0 / 720.0, 9.0 / 40320.0, -11.0 / 3628800.0],
        )
    } else {
        (x.cos() - x * x.sin() - 1.0) / (x * x)
    }
}

/// `(x cos x − sin x)/x²`.
fn kminus1_derivative_factor(x: f64) -> f64 {
    if x.abs() < 0.05 {
        x * series(x * x, &[-1.0 / 3.0, 1.0 / 30.0, -1.0 / 840.0, 1.0 / 45360.0])
    } else {
        (x * x.cos() - x.sin()) / (x * x)
    }
}

/// dg/dδ of the effective phase factor.
pub fn phase_factor_derivative(delta: f64, window: f64, k: SequencePhase, form: FormulaForm) -> f64 {
    let x = delta * window;
    let scale = 2.0 / PI * window * window;
    match (k, form) {
        (SequencePhase::K0, FormulaForm::Corrected) => scale * derivative_factor_corrected(x),
        (SequencePhase::K0, FormulaForm::Printed) => scale * derivative_factor_printed(x),
        (SequencePhase::KMinus1, _) => scale * kminus1_derivative_factor(x),
    }
}

/// The K−1 phase exactly as printed, `(2s/π)(sin δT − 1)/δ`; singular at δ = 0.
pub fn printed_kminus1_phase(coupling: f64, delta: f64, window: f64) -> f64 {
    2.0 * coupling / PI * ((delta * window).sin() - 1.0) / delta
}

fn validate_state(kind: StateKind, theta: f64, n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n_particles", "must be positive"));
    }
    if kind == StateKind::Cat {
        if n % 2 != 0 {
            return Err(Error::OddParticleNumber(n));
        }
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta) {
            return Err(invalid("theta", format!("{theta} is outside [0, π/2)")));
        }
    }
    Ok(())
}

/// Ã(φ) = ΔĴz/|∂⟨Ĵz⟩/∂φ|. Exactly 1/√N for SCS and 1/N for GHZ.
pub fn coefficient_a_tilde(kind: StateKind, theta: f64, n: usize, phi: f64) -> Result<Precision> {
    validate_state(kind, theta, n)?;
    let nf = n as f64;
    Ok(match kind {
        StateKind::Scs => Precision::Finite(1.0 / nf.sqrt()),
        StateKind::Ghz => Precision::Finite(1.0 / nf),
        StateKind::Cat => {
            let (stats, d) = moments_with_derivative(kind, theta, phi, n, LParity::Even)?;
            if d.abs() < 1e-12 {
                Precision::Unmeasurable
            } else {
                Precision::ratio(stats.jz_std, d)
            }
        }
    })
}

/// Closed-form Δω and γΔB at one detuning.
pub fn precision_closed_form(input: &PrecisionFormulaInput, form: FormulaForm) -> Result<PrecisionPair> {
    validate_state(input.state_kind, input.theta, input.n_particles)?;
    if !(input.coupling > 0.0) || !(input.window > 0.0) || !input.delta.is_finite() {
        return Err(invalid(
            "input",
            "coupling and window must be positive and delta finite",
        ));
    }
    let g = effective_phase_factor(input.delta, input.window, input.k_phase);
    let gp = phase_factor_derivative(input.delta, input.window, input.k_phase, form);
    let phi = input.coupling * g;
    let a = coefficient_a_tilde(input.state_kind, input.theta, input.n_particles, phi)?;
    let per = |den: f64| match a {
        Precision::Finite(v) => Precision::ratio(v, den),
        other => other,
    };
    Ok(PrecisionPair {
        delta_omega: per(input.coupling * gp),
        delta_b: per(g),
    })
}

/// Δω in the δ → 0 limit, K0: Ã·π/(sT²) (corrected) or Ã·π/(3sT²) (printed).
pub fn k0_frequency_limit(
    kind: StateKind,
    theta: f64,
    n: usize,
    coupling: f64,
    window: f64,
    form: FormulaForm,
) -> Result<Precision> {
    let a = coefficient_a_tilde(kind, theta, n, 0.0)?;
    let factor = match form {
        FormulaForm::Corrected => 1.0,
        FormulaForm::Printed => 1.0 / 3.0,
    };
    Ok(a.scale(factor * PI / (coupling * window * window)))
}

/// γΔB in the δ → 0 limit, K−1: Ã·π/(2T), with Ã at φ = 2sT/π.
pub fn kminus1_field_limit(kind: StateKind, theta: f64, n: usize, coupling: f64, window: f64) -> Result<Precision> {
    let phi = 2.0 * coupling * window / PI;
    let a = coefficient_a_tilde(kind, theta, n, phi)?;
    Ok(a.scale(PI / (2.0 * window)))
}
