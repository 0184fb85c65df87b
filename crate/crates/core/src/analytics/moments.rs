//! Closed-form Ĵz moments of the final state for each probe.

use crate::error::{Error, Result};
use crate::readout::MeasurementStats;
use crate::spin::SpinSystem;
use crate::states::{cat_weights, StateKind};

/// Parity of the pulse count L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LParity {
    Even,
    Odd,
}

impl LParity {
    pub fn of(pulse_count: usize) -> Self {
        if pulse_count % 2 == 0 {
            LParity::Even
        } else {
            LParity::Odd
        }
    }

    pub fn sign(&self) -> f64 {
        match self {
            LParity::Even => 1.0,
            LParity::Odd => -1.0,
        }
    }
}

/// SCS with the Ĵy readout: ⟨Ĵz⟩ = (N/2)cos φ, ⟨Ĵz²⟩ = N/4 + N(N−1)/4·cos²φ.
pub fn scs_moments(phi: f64, n: usize, parity: LParity) -> MeasurementStats {
    let nf = n as f64;
    let c = phi.cos();
    MeasurementStats {
        jz_mean: nf / 2.0 * c,
        jz2_mean: nf / 4.0 + nf * (nf - 1.0) / 4.0 * c * c,
        jz_std: nf.sqrt() / 2.0 * phi.sin().abs(),
        parity_sign: parity.sign(),
    }
}

/// GHZ with the interaction-based readout: ⟨Ĵz⟩ = −(N/2) sin Nφ, ⟨Ĵz²⟩ = N²/4.
pub fn ghz_moments(phi: f64, n: usize, parity: LParity) -> MeasurementStats {
    let nf = n as f64;
    MeasurementStats {
        jz_mean: -nf / 2.0 * (nf * phi).sin(),
        jz2_mean: nf * nf / 4.0,
        jz_std: nf / 2.0 * (nf * phi).cos().abs(),
        parity_sign: parity.sign(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatMoments {
    pub stats: MeasurementStats,
    /// d⟨Ĵz⟩/dφ of the interaction-picture mean.
    pub djz_dphi: f64,
}

fn require_even(n: usize) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::OddParticleNumber(n));
    }
    Ok(())
}

/// Cat state with the interaction-based readout, even N only:
/// ⟨Ĵz⟩ = −Σ(−1)^{J−m} m w_m sin(2mφ), ⟨Ĵz²⟩ = Σ m² w_m.
pub fn cat_moments(theta: f64, phi: f64, n: usize, parity: LParity) -> Result<CatMoments> {
    require_even(n)?;
    let sys = SpinSystem::new(n)?;
    let w = cat_weights(&sys, theta)?;
    let j = n / 2;
    let (mut mean, mut second, mut deriv) = (0.0, 0.0, 0.0);
    for (i, wi) in w.iter().enumerate() {
        if *wi == 0.0 {
            continue;
        }
        let m = sys.m(i);
        // (−1)^{J−m} = (−1)^i for integer J
        let sg = if i % 2 == 0 { 1.0 } else { -1.0 };
        mean -= sg * m * wi * (2.0 * m * phi).sin();
        second += m * m * wi;
        deriv -= 2.0 * sg * m * m * wi * (2.0 * m * phi).cos();
    }
    debug_assert!(j * 2 == n);
    let var = (second - mean * mean).max(0.0);
    Ok(CatMoments {
        stats: MeasurementStats {
            jz_mean: mean,
            jz2_mean: second,
            jz_std: var.sqrt(),
            parity_sign: parity.sign(),
        },
        djz_dphi: deriv,
    })
}

/// Moments and d⟨Ĵz⟩/dφ for any probe family.
pub fn moments_with_derivative(
    kind: StateKind,
    theta: f64,
    phi: f64,
    n: usize,
    parity: LParity,
) -> Result<(MeasurementStats, f64)> {
    let nf = n as f64;
    match kind {
        StateKind::Scs => Ok((scs_moments(phi, n, parity), -nf / 2.0 * phi.sin())),
        StateKind::Ghz => Ok((ghz_moments(phi, n, parity), -nf * nf / 2.0 * (nf * phi).cos())),
        StateKind::Cat => {
            let c = cat_moments(theta, phi, n, parity)?;
            Ok((c.stats, c.djz_dphi))
        }
    }
}
