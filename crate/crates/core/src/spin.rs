//! Collective spin algebra in the symmetric Dicke basis.
//!
//! Basis index `i` in `[0, N]` labels the Dicke state `|J, m>` with
//! `m = J - i`, i.e. index 0 is the fully polarized `m = +J` state. Every
//! matrix and amplitude vector in the crate uses this ordering.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Shorthand used throughout the crate.
pub type C64 = Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// N two-level bosons restricted to the symmetric sector, total spin J = N/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpinSystem {
    n_particles: usize,
}

impl SpinSystem {
    pub fn new(n_particles: usize) -> Result<Self> {
        if n_particles == 0 {
            return Err(invalid("n_particles", "must be positive"));
        }
        Ok(Self { n_particles })
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    /// Total spin J = N/2.
    pub fn j(&self) -> f64 {
        self.n_particles as f64 / 2.0
    }

    /// Dicke-basis dimension N + 1.
    pub fn dim(&self) -> usize {
        self.n_particles + 1
    }

    /// Magnetic quantum number of basis index `i`.
    pub fn m(&self, index: usize) -> f64 {
        self.j() - index as f64
    }

    /// `m` values in basis order (+J down to -J).
    pub fn magnetic_numbers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.dim()).map(move |i| self.m(i))
    }

    /// Basis index holding magnetic number `m`, if `m` belongs to the spectrum.
    pub fn index_of(&self, m: f64) -> Option<usize> {
        let i = self.j() - m;
        let r = i.round();
        ((i - r).abs() < 1e-9 && r >= 0.0 && (r as usize) < self.dim()).then_some(r as usize)
    }

    /// The Dicke state `|J, m>` at basis index `index`.
    pub fn basis_state(&self, index: usize) -> QuantumState {
        let mut v = DVector::zeros(self.dim());
        v[index] = C64::new(1.0, 0.0);
        QuantumState { amplitudes: v }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Normalized amplitude vector over the Dicke basis.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    amplitudes: DVector<C64>,
}

impl QuantumState {
    /// Wraps amplitudes that are already normalized (to 1e-10).
    pub fn from_amplitudes(amplitudes: DVector<C64>) -> Result<Self> {
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > 1e-10 {
            return Err(invalid(
                "amplitudes",
                format!("squared norm {norm_sq} is not 1"),
            ));
        }
        Ok(Self { amplitudes })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized_from(amplitudes: DVector<C64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(invalid("amplitudes", "cannot normalize a zero vector"));
        }
        Ok(Self {
            amplitudes: amplitudes / C64::new(norm, 0.0),
        })
    }

    /// Real amplitudes, normalized on construction.
    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::normalized_from(DVector::from_iterator(
            values.len(),
            values.iter().map(|&v| C64::new(v, 0.0)),
        ))
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// |amplitude|² per basis index.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &QuantumState) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub fn fidelity(&self, other: &QuantumState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Multiplies amplitude `i` by `phase(i)`. Used for diagonal unitaries,
    /// which never need a dense matrix.
    pub fn map_diagonal(&self, phase: impl Fn(usize) -> C64) -> QuantumState {
        let amplitudes =
            DVector::from_iterator(self.dim(), self.amplitudes.iter().enumerate().map(|(i, a)| a * phase(i)));
        QuantumState { amplitudes }
    }

    pub(crate) fn from_raw(amplitudes: DVector<C64>) -> Self {
        Self { amplitudes }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    Hermitian,
    Unitary,
    General,
}

/// Dense complex operator on the Dicke basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<C64>,
    kind: OperatorKind,
}

impl OperatorMatrix {
    pub fn new(entries: DMatrix<C64>, kind: OperatorKind) -> Result<Self> {
        if !entries.is_square() {
            return Err(invalid("entries", "operator matrix must be square"));
        }
        Ok(Self { entries, kind })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: DMatrix::identity(dim, dim),
            kind: OperatorKind::Unitary,
        }
    }

    pub fn entries(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// max |M - M†|.
    pub fn hermiticity_defect(&self) -> f64 {
        max_abs(&(&self.entries - self.entries.adjoint()))
    }

    /// max |M†M - I|.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.dim();
        max_abs(&(self.entries.adjoint() * &self.entries - DMatrix::<C64>::identity(n, n)))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
            kind: self.kind,
        }
    }

    /// Matrix product `self * rhs`; the right operand acts first.
    pub fn compose(&self, rhs: &OperatorMatrix) -> Result<Self> {
        check_dim(self.dim(), rhs.dim())?;
        let kind = match (self.kind, rhs.kind) {
            (OperatorKind::Unitary, OperatorKind::Unitary) => OperatorKind::Unitary,
            _ => OperatorKind::General,
        };
        Ok(Self {
            entries: &self.entries * &rhs.entries,
            kind,
        })
    }

    pub fn apply(&self, state: &QuantumState) -> Result<QuantumState> {
        check_dim(self.dim(), state.dim())?;
        Ok(QuantumState::from_raw(&self.entries * &state.amplitudes))
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

pub(crate) fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Ladder coefficient `<J, m+1| J+ |J, m>`.
fn raising_coefficient(j: f64, m: f64) -> f64 {
    (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
}

/// Real symmetric tridiagonal matrix of Ĵx.
fn jx_real(sys: &SpinSystem) -> DMatrix<f64> {
    let d = sys.dim();
    let j = sys.j();
    let mut jx = DMatrix::zeros(d, d);
    for i in 1..d {
        // index i-1 holds m+1 where m = sys.m(i)
        let c = 0.5 * raising_coefficient(j, sys.m(i));
        jx[(i - 1, i)] = c;
        jx[(i, i - 1)] = c;
    }
    jx
}

/// Ĵx, Ĵy or Ĵz as a dense Hermitian matrix.
pub fn collective_operator(sys: &SpinSystem, axis: Axis) -> OperatorMatrix {
    let d = sys.dim();
    let j = sys.j();
    let mut entries = DMatrix::<C64>::zeros(d, d);
    match axis {
        Axis::Z => {
            for i in 0..d {
                entries[(i, i)] = C64::new(sys.m(i), 0.0);
            }
        }
        Axis::X | Axis::Y => {
            for i in 1..d {
                let c = 0.5 * raising_coefficient(j, sys.m(i));
                // upper entry is <m+1|J|m>: J+ contributes c, J- contributes 0
                let (up, down) = match axis {
                    Axis::X => (C64::new(c, 0.0), C64::new(c, 0.0)),
                    _ => (C64::new(0.0, -c), C64::new(0.0, c)),
                };
                entries[(i - 1, i)] = up;
                entries[(i, i - 1)] = down;
            }
        }
    }
    OperatorMatrix {
        entries,
        kind: OperatorKind::Hermitian,
    }
}

/// exp(-i·angle·Ĵaxis).
///
/// The z rotation is built diagonally. The x rotation comes from the
/// eigendecomposition of the real tridiagonal Ĵx, and the y rotation is that
/// x rotation conjugated by a quarter turn about z (Ĵy = Rz Ĵx Rz†).
pub fn rotation_unitary(sys: &SpinSystem, axis: Axis, angle: f64) -> OperatorMatrix {
    assert!(angle.is_finite(), "rotation angle must be finite");
    let entries = match axis {
        Axis::Z => z_phase_matrix(sys, angle),
        Axis::X => x_rotation(sys, angle),
        Axis::Y => {
            let rz = z_phase_matrix(sys, std::f64::consts::FRAC_PI_2);
            &rz * x_rotation(sys, angle) * rz.adjoint()
        }
    };
    OperatorMatrix {
        entries,
        kind: OperatorKind::Unitary,
    }
}

fn z_phase_matrix(sys: &SpinSystem, angle: f64) -> DMatrix<C64> {
    DMatrix::from_diagonal(&DVector::from_iterator(
        sys.dim(),
        sys.magnetic_numbers().map(|m| C64::from_polar(1.0, -angle * m)),
    ))
}

fn x_rotation(sys: &SpinSystem, angle: f64) -> DMatrix<C64> {
    let eig = SymmetricEigen::new(jx_real(sys));
    let v = eig.eigenvectors.map(|x| C64::new(x, 0.0));
    let phases = DVector::from_iterator(
        sys.dim(),
        eig.eigenvalues.iter().map(|&lambda| C64::from_polar(1.0, -angle * lambda)),
    );
    let mut scaled = v.clone();
    for (mut col, p) in scaled.column_iter_mut().zip(phases.iter()) {
        col *= *p;
    }
    scaled * v.transpose()
}

/// exp(+i·angle·Ĵz²), diagonal with entries exp(i·angle·m²).
pub fn twisting_unitary(sys: &SpinSystem, angle: f64) -> OperatorMatrix {
    let diag = DVector::from_iterator(
        sys.dim(),
        sys.magnetic_numbers().map(|m| C64::from_polar(1.0, angle * m * m)),
    );
    OperatorMatrix {
        entries: DMatrix::from_diagonal(&diag),
        kind: OperatorKind::Unitary,
    }
}

/// `<state|op|state>` for a Hermitian operator; the (roundoff) imaginary part
/// is dropped.
pub fn expectation(state: &QuantumState, op: &OperatorMatrix) -> Result<f64> {
    check_dim(op.dim(), state.dim())?;
    if op.kind != OperatorKind::Hermitian && op.hermiticity_defect() > 1e-12 {
        return Err(invalid("op", "expectation requires a Hermitian operator"));
    }
    let psi = state.amplitudes();
    let value = psi.dotc(&(&op.entries * psi));
    debug_assert!(value.im.abs() <= 1e-10 * (1.0 + value.re.abs()));
    Ok(value.re)
}

/// Eigenvalue spectrum of Ĵx as computed numerically; used by tests and
/// diagnostics to confirm it reproduces the exact `m` ladder.
pub fn jx_spectrum(sys: &SpinSystem) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(jx_real(sys)).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
    ev
}

#[allow(dead_code)]
pub(crate) fn i_times(z: C64) -> C64 {
    I * z
}
