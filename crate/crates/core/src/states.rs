//! Input states: spin coherent states, two-branch superpositions, cat and GHZ.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use nalgebra::DVector;

use crate::error::{invalid, Result};
use crate::spin::{rotation_unitary, Axis, QuantumState, SpinSystem, C64};

/// Which family of probe state is fed into the interferometer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateKind {
    Scs,
    Cat,
    Ghz,
}

impl StateKind {
    pub fn name(&self) -> &'static str {
        match self {
            StateKind::Scs => "scs",
            StateKind::Cat => "cat",
            StateKind::Ghz => "ghz",
        }
    }
}

impl std::str::FromStr for StateKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "scs" => Ok(StateKind::Scs),
            "cat" => Ok(StateKind::Cat),
            "ghz" => Ok(StateKind::Ghz),
            other => Err(format!("unknown state kind `{other}` (expected scs, cat or ghz)")),
        }
    }
}

/// `n * ln(base)`, with the convention `0 * ln(0) = 0`.
fn log_power(base: f64, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        n as f64 * base.ln()
    }
}

/// Coherent-state coefficients `c_m(θ) = √C(N, J+m) cos^{J+m}(θ/2) sin^{J−m}(θ/2)`
/// in basis order. Evaluated in log space so large N does not overflow.
pub fn scs_coefficients(sys: &SpinSystem, theta: f64) -> Result<Vec<f64>> {
    if !(0.0..=PI).contains(&theta) {
        return Err(invalid("theta", format!("{theta} is outside [0, π]")));
    }
    let n = sys.n_particles();
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let mut ln_binom = 0.0;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        if i > 0 {
            ln_binom += ((n - i + 1) as f64 / i as f64).ln();
        }
        // index i carries J + m = N - i and J - m = i
        let ln_c = 0.5 * ln_binom + log_power(c, n - i) + log_power(s, i);
        out.push(ln_c.exp());
    }
    Ok(out)
}

fn real_state(values: impl ExactSizeIterator<Item = f64>) -> DVector<C64> {
    let len = values.len();
    DVector::from_iterator(len, values.map(|v| C64::new(v, 0.0)))
}

/// exp(−i(π/2)Ĵy)|J, −J⟩: the product state polarized along −x.
pub fn prepare_scs_input(sys: &SpinSystem) -> QuantumState {
    let down = sys.basis_state(sys.dim() - 1);
    rotation_unitary(sys, Axis::Y, FRAC_PI_2)
        .apply(&down)
        .expect("dimensions agree by construction")
}

/// Symmetrized amplitudes `c_m(θ) + c_{−m}(θ)`, unnormalized.
fn symmetric_amplitudes(sys: &SpinSystem, theta: f64) -> Result<Vec<f64>> {
    let c = scs_coefficients(sys, theta)?;
    let n = sys.n_particles();
    Ok((0..=n).map(|i| c[i] + c[n - i]).collect())
}

fn check_branch_angle(theta: f64) -> Result<()> {
    if !(0.0..FRAC_PI_2).contains(&theta) {
        return Err(invalid("theta", format!("{theta} is outside [0, π/2)")));
    }
    Ok(())
}

/// Normalization of |Ψ(θ)⟩ + |Ψ(π−θ)⟩; the branch overlap is sin^N θ.
pub fn mssc_normalization(sys: &SpinSystem, theta: f64) -> f64 {
    let overlap = theta.sin().powi(sys.n_particles() as i32);
    1.0 / (2.0 + 2.0 * overlap).sqrt()
}

/// N_c(|Ψ(θ)⟩ + |Ψ(π−θ)⟩) with N_c fixed by exact normalization.
pub fn prepare_mssc(sys: &SpinSystem, theta: f64) -> Result<QuantumState> {
    check_branch_angle(theta)?;
    let a = symmetric_amplitudes(sys, theta)?;
    QuantumState::normalized_from(real_state(a.into_iter()))
}

/// Parameters of a cat state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatSpec {
    pub theta: f64,
    pub n_particles: usize,
}

impl CatSpec {
    pub fn new(theta: f64, n_particles: usize) -> Result<Self> {
        check_branch_angle(theta)?;
        if n_particles == 0 {
            return Err(invalid("n_particles", "must be positive"));
        }
        Ok(Self { theta, n_particles })
    }

    /// N ≥ 6 and θ ≤ π/8, where the cat approximation is quoted as reliable.
    pub fn in_validity_regime(&self) -> bool {
        self.n_particles >= 6 && self.theta <= PI / 8.0 + 1e-12
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatState {
    pub state: QuantumState,
    /// `1 − ‖v‖` for the vector built with the bare 1/√2 prefactor.
    pub normalization_defect: f64,
    /// Set when the spec lies outside N ≥ 6, θ ≤ π/8.
    pub validity_warning: Option<String>,
}

/// (1/√2)Σ c_m(θ)(|J,m⟩ + |J,−m⟩), renormalized exactly.
pub fn prepare_cat(spec: CatSpec) -> Result<CatState> {
    let sys = SpinSystem::new(spec.n_particles)?;
    let a: Vec<f64> = symmetric_amplitudes(&sys, spec.theta)?
        .into_iter()
        .map(|v| v * FRAC_1_SQRT_2)
        .collect();
    let norm = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let validity_warning = (!spec.in_validity_regime()).then(|| {
        format!(
            "cat approximation used outside N >= 6, theta <= pi/8 (N = {}, theta = {})",
            spec.n_particles, spec.theta
        )
    });
    Ok(CatState {
        state: QuantumState::normalized_from(real_state(a.into_iter()))?,
        normalization_defect: 1.0 - norm,
        validity_warning,
    })
}

/// (|J,J⟩ + |J,−J⟩)/√2.
pub fn prepare_ghz(sys: &SpinSystem) -> QuantumState {
    let mut v = DVector::zeros(sys.dim());
    v[0] = C64::new(FRAC_1_SQRT_2, 0.0);
    v[sys.dim() - 1] = C64::new(FRAC_1_SQRT_2, 0.0);
    QuantumState::from_raw(v)
}

/// Input state for a scan: SCS, cat (exactly normalized) or GHZ.
pub fn prepare_state(kind: StateKind, sys: &SpinSystem, theta: f64) -> Result<QuantumState> {
    match kind {
        StateKind::Scs => Ok(prepare_scs_input(sys)),
        StateKind::Cat => Ok(prepare_cat(CatSpec::new(theta, sys.n_particles())?)?.state),
        StateKind::Ghz => Ok(prepare_ghz(sys)),
    }
}

/// Cat weights `w_m = a_m² / Σa²` with `a_m = c_m(θ) + c_{−m}(θ)`, in basis order.
/// These are the measurement probabilities of the prepared cat state.
pub fn cat_weights(sys: &SpinSystem, theta: f64) -> Result<Vec<f64>> {
    check_branch_angle(theta)?;
    let a = symmetric_amplitudes(sys, theta)?;
    let total: f64 = a.iter().map(|v| v * v).sum();
    Ok(a.iter().map(|v| v * v / total).collect())
}
