//! Cat-state precision coefficients B̃(J, θ) and C(θ).
//!
//! With the measurement weights `w_m` of the prepared cat state the quoted
//! `|c_m|²` sums correspond to `2 w_m`, which keeps θ = 0 consistent with GHZ.

use crate::error::{invalid, Error, Result};
use crate::spin::SpinSystem;
use crate::states::cat_weights;

/// Denominator variant of the closed-form C(θ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CDenominator {
    /// 1 + 2t/(1 + t), t = tan²(θ/2).
    OnePlus,
    /// 1 + 2t/(1 − t).
    OneMinus,
}

/// Closed-form C(θ) = 1 + 2tan²(θ/2)/(1 ± tan²(θ/2)).
pub fn coefficient_c_theta(theta: f64, denominator: CDenominator) -> Result<f64> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta) {
        return Err(invalid("theta", format!("{theta} is outside [0, π/2)")));
    }
    let t = (theta / 2.0).tan().powi(2);
    Ok(match denominator {
        CDenominator::OnePlus => 1.0 + 2.0 * t / (1.0 + t),
        CDenominator::OneMinus => 1.0 + 2.0 * t / (1.0 - t),
    })
}

fn even_weights(theta: f64, n: usize) -> Result<(SpinSystem, Vec<f64>)> {
    if n % 2 != 0 {
        return Err(Error::OddParticleNumber(n));
    }
    let sys = SpinSystem::new(n)?;
    let w = cat_weights(&sys, theta)?;
    Ok((sys, w))
}

/// Direct-sum C: N·Ã at φ = π/2, which reduces to N/(2√⟨Ĵz²⟩).
pub fn coefficient_c_theta_oracle(theta: f64, n: usize) -> Result<f64> {
    let (sys, w) = even_weights(theta, n)?;
    let jz2: f64 = sys.magnetic_numbers().zip(&w).map(|(m, w)| m * m * w).sum();
    Ok(n as f64 / (2.0 * jz2.sqrt()))
}

/// B̃(J, θ) = √(½Σm²|c_m|²) / |Σm²(−1)^{J−m}|c_m|²|, the cat Ã at φ = 0.
pub fn coefficient_b_tilde(theta: f64, n: usize) -> Result<f64> {
    let (sys, w) = even_weights(theta, n)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, (m, w)) in sys.magnetic_numbers().zip(&w).enumerate() {
        let sg = if i % 2 == 0 { 1.0 } else { -1.0 };
        num += m * m * w;
        den += 2.0 * sg * m * m * w;
    }
    if den.abs() < 1e-300 {
        return Err(Error::IllConditioned(format!(
            "alternating sum for B̃ underflows at N = {n}, θ = {theta}"
        )));
    }
    Ok(num.sqrt() / den.abs())
}
