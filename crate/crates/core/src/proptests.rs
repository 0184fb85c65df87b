//! Property-based checks of the invariants shared across modules.

use std::f64::consts::PI;

use crate::analytics::{cat_moments, precision_closed_form, FormulaForm, LParity, PrecisionFormulaInput};
use crate::evolution::effective_phase_factor;
use crate::readout::{measure_halfpop, ReadoutKind};
use crate::sequence::{pulse_times, sample_noise, square_wave};
use crate::spin::{collective_operator, rotation_unitary, twisting_unitary, C64};
use crate::states::{prepare_mssc, prepare_scs_input};
use crate::{Axis, NoiseParams, OperatorMatrix, PulseSequence, QuantumState, SequencePhase, SpinSystem, StateKind};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn axis() -> impl Strategy<Value = Axis> {
    prop_oneof![Just(Axis::X), Just(Axis::Y), Just(Axis::Z)]
}

fn k_phase() -> impl Strategy<Value = SequencePhase> {
    prop_oneof![Just(SequencePhase::K0), Just(SequencePhase::KMinus1)]
}

fn random_state(n: usize) -> impl Strategy<Value = QuantumState> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n + 1)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(|v| {
            let amps = DVector::from_iterator(v.len(), v.into_iter().map(|(a, b)| C64::new(a, b)));
            QuantumState::normalized_from(amps).unwrap()
        })
}

fn sized_state() -> impl Strategy<Value = (usize, QuantumState)> {
    (1usize..=20).prop_flat_map(|n| (Just(n), random_state(n)))
}

fn product(a: &OperatorMatrix, b: &OperatorMatrix) -> DMatrix<C64> {
    a.entries() * b.entries()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn casimir_is_scalar(n in 1usize..=20) {
        let sys = SpinSystem::new(n).unwrap();
        let [x, y, z] = [Axis::X, Axis::Y, Axis::Z].map(|a| collective_operator(&sys, a));
        let sum = product(&x, &x) + product(&y, &y) + product(&z, &z);
        let j = sys.j();
        let expected = DMatrix::<C64>::identity(sys.dim(), sys.dim()) * C64::new(j * (j + 1.0), 0.0);
        prop_assert!(max_abs(&(sum - expected)) <= 1e-10);
    }

    #[test]
    fn angular_momentum_commutators(n in 1usize..=20) {
        let sys = SpinSystem::new(n).unwrap();
        let [x, y, z] = [Axis::X, Axis::Y, Axis::Z].map(|a| collective_operator(&sys, a));
        let i = C64::new(0.0, 1.0);
        for (a, b, c) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
            let comm = product(a, b) - product(b, a);
            prop_assert!(max_abs(&(comm - c.entries() * i)) <= 1e-10);
        }
        for op in [&x, &y, &z] {
            prop_assert!(op.hermiticity_defect() <= 1e-12);
        }
    }

    #[test]
    fn rotations_are_unitary_and_preserve_norm((n, psi) in sized_state(), ax in axis(), angle in -10.0f64..10.0) {
        let sys = SpinSystem::new(n).unwrap();
        let u = rotation_unitary(&sys, ax, angle);
        prop_assert!(u.unitarity_defect() <= 1e-10);
        prop_assert!((u.apply(&psi).unwrap().norm() - 1.0).abs() <= 1e-10);
        let tw = twisting_unitary(&sys, angle);
        prop_assert!((tw.apply(&psi).unwrap().norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn z_rotations_compose(n in 1usize..=20, angle in -7.0f64..7.0) {
        let sys = SpinSystem::new(n).unwrap();
        let once = rotation_unitary(&sys, Axis::Z, angle);
        let twice = once.compose(&once).unwrap();
        let direct = rotation_unitary(&sys, Axis::Z, 2.0 * angle);
        prop_assert!(max_abs(&(twice.entries() - direct.entries())) <= 1e-10);
    }

    #[test]
    fn square_wave_flips_only_at_pulses(
        omega_e in 5.0f64..80.0,
        window in 0.5f64..8.0,
        k in k_phase(),
    ) {
        let seq = PulseSequence::from_carrier(omega_e, k, window).unwrap();
        prop_assert_eq!(seq.carrier_frequency(), PI / seq.tau());
        prop_assert!((seq.carrier_frequency() * seq.tau() - PI).abs() <= 4.0 * f64::EPSILON);
        prop_assert_eq!(seq.pulse_count(), ((window / seq.tau()) + 0.5).floor() as usize);
        let pulses: Vec<f64> = pulse_times(&seq).into_iter().filter(|&t| t > 0.0 && t < window).collect();
        let steps = 20_000;
        let dt = window / steps as f64;
        let mut prev = square_wave(&seq, 0.5 * dt);
        for i in 1..steps {
            let t = (i as f64 + 0.5) * dt;
            let cur = square_wave(&seq, t);
            let crossed = pulses.iter().filter(|&&p| p > t - dt && p <= t).count();
            prop_assert_eq!(cur == prev, crossed % 2 == 0, "t = {}", t);
            prev = cur;
        }
    }

    #[test]
    fn noise_is_bounded(eta in 0.0f64..10.0, seed in any::<u64>(), window in 0.5f64..7.0) {
        let p = NoiseParams::new(eta, window / 200.0, seed).unwrap();
        let tr = sample_noise(&p, window);
        prop_assert!(tr.values().iter().all(|v| v.abs() <= eta));
        prop_assert!(tr.covered() >= window * (1.0 - 1e-9));
    }

    #[test]
    fn mssc_is_real_and_mirror_symmetric(half in 1usize..=5, theta in 0.0f64..1.5) {
        let n = 2 * half;
        let sys = SpinSystem::new(n).unwrap();
        let psi = prepare_mssc(&sys, theta).unwrap();
        let a = psi.amplitudes();
        prop_assert!((psi.norm() - 1.0).abs() <= 1e-10);
        for i in 0..=n {
            prop_assert!(a[i].im == 0.0);
            prop_assert!((a[i].re - a[n - i].re).abs() <= 1e-14);
        }
    }

    #[test]
    fn measurement_moments_are_consistent((n, psi) in sized_state(), pulses in 0usize..300) {
        let st = measure_halfpop(&psi, pulses);
        let half = n as f64 / 2.0;
        prop_assert!((st.jz_std.powi(2) - (st.jz2_mean - st.jz_mean.powi(2))).abs() <= 1e-9);
        prop_assert!(st.jz_mean.abs() <= half + 1e-12);
        prop_assert!(st.jz2_mean >= 0.0 && st.jz2_mean <= half * half + 1e-12);
        prop_assert!(st.jz_std >= 0.0);
    }

    #[test]
    fn readouts_preserve_norm(n in 1usize..=20, phi in 0.0f64..PI) {
        let sys = SpinSystem::new(n).unwrap();
        let psi = crate::evolution::evolve_lockin(&prepare_scs_input(&sys), phi);
        for kind in [ReadoutKind::Scs, ReadoutKind::InteractionBased] {
            prop_assert!((kind.operator(&sys).apply(&psi).unwrap().norm() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn precision_scales_with_n(n in 1usize..=30, delta in 0.05f64..1.0, k in k_phase()) {
        for (kind, factor) in [(StateKind::Scs, 2.0), (StateKind::Ghz, 4.0)] {
            let at = |n: usize| {
                precision_closed_form(
                    &PrecisionFormulaInput {
                        state_kind: kind,
                        theta: 0.0,
                        n_particles: n,
                        coupling: 2.0 * PI,
                        window: 2.0 * PI,
                        delta,
                        k_phase: k,
                    },
                    FormulaForm::Corrected,
                )
                .unwrap()
            };
            let (small, large) = (at(n), at(4 * n));
            for (a, b) in [(small.delta_omega, large.delta_omega), (small.delta_b, large.delta_b)] {
                if let (Some(a), Some(b)) = (a.value(), b.value()) {
                    prop_assert!((a / b - factor).abs() <= 1e-12 * factor);
                }
            }
        }
    }

    #[test]
    fn cat_derivative_matches_finite_difference(half in 3usize..=5, theta in 0.0f64..0.3927, phi in -1.5f64..1.5) {
        let n = 2 * half;
        let h = 1e-5;
        let at = |p: f64| cat_moments(theta, p, n, LParity::Even).unwrap();
        let numeric = (at(phi + h).stats.jz_mean - at(phi - h).stats.jz_mean) / (2.0 * h);
        prop_assert!((at(phi).djz_dphi - numeric).abs() <= 1e-7);
    }

    #[test]
    fn k0_phase_is_odd_in_detuning(delta in -2.0f64..2.0, window in 0.5f64..10.0) {
        let a = effective_phase_factor(delta, window, SequencePhase::K0);
        let b = effective_phase_factor(-delta, window, SequencePhase::K0);
        prop_assert_eq!(a, -b);
        let c = effective_phase_factor(delta, window, SequencePhase::KMinus1);
        let d = effective_phase_factor(-delta, window, SequencePhase::KMinus1);
        prop_assert_eq!(c, d);
    }
}
