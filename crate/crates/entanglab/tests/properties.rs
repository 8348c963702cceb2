//! Property tests for the cross-module invariants.

use entanglab::decoherence::{decohered_state, decoherence_factor, EnvironmentSpec};
use entanglab::interferometry::{
    chsh, joint_distribution, marginal, station_unitary, ChshSettings, PairState, PhaseSettings,
};
use entanglab::qlinalg::{
    apply, density_of, eig_hermitian, partial_trace, reduced_from_pure, tensor, BipartiteShape,
    StateVector, Subsystem,
};
use entanglab::sampler::{sample_joint, SampleConfig};
use entanglab::states::{collapse_mixture, measurement_interaction, premeasure, Amplitudes};

use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn amplitudes_strategy() -> impl Strategy<Value = Amplitudes> {
    (0.0f64..=1.0, -PI..PI, -PI..PI).prop_map(|(p1, phase1, phase2)| {
        let c1 = Complex64::from_polar(p1.sqrt(), phase1);
        let c2 = Complex64::from_polar((1.0 - p1).sqrt(), phase2);
        Amplitudes::new(c1, c2).expect("constructed on the unit sphere")
    })
}

fn pure_pair_strategy() -> impl Strategy<Value = StateVector> {
    proptest::collection::vec(-1.0f64..1.0, 8)
        .prop_filter("norm too small", |v| {
            v.iter().map(|x| x * x).sum::<f64>() > 1e-4
        })
        .prop_map(|v| {
            let amps: Vec<Complex64> = v
                .chunks(2)
                .map(|pair| Complex64::new(pair[0], pair[1]))
                .collect();
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            StateVector::new(amps.into_iter().map(|z| z / norm).collect()).unwrap()
        })
}

proptest! {
    #[test]
    fn tensor_and_unitaries_preserve_norm(a in amplitudes_strategy(), phi in -PI..PI) {
        let m = premeasure(&a);
        prop_assert!((m.psi().norm_sqr() - 1.0).abs() <= 1e-12);

        let rotated = apply(
            &station_unitary(phi).tensor(&station_unitary(-phi)).unwrap(),
            m.psi(),
        ).unwrap();
        prop_assert!((rotated.norm_sqr() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn partial_trace_preserves_trace_and_schmidt_symmetry(psi in pure_pair_strategy()) {
        let shape = BipartiteShape::two_qubits();
        let rho = density_of(&psi);
        let rho_s = partial_trace(&rho, shape, Subsystem::S).unwrap();
        let rho_a = partial_trace(&rho, shape, Subsystem::A).unwrap();

        prop_assert!((rho_s.trace() - 1.0).abs() <= 1e-12);
        prop_assert!((rho_a.trace() - 1.0).abs() <= 1e-12);

        // the nonzero spectra of the two reductions coincide
        let spec_s = eig_hermitian(&rho_s).unwrap().values();
        let spec_a = eig_hermitian(&rho_a).unwrap().values();
        for (s, a) in spec_s.iter().zip(&spec_a) {
            prop_assert!((s - a).abs() <= 1e-10);
        }
    }

    #[test]
    fn product_states_reduce_to_pure_factors(
        a in amplitudes_strategy(),
        b in amplitudes_strategy(),
    ) {
        use entanglab::states::superposition;
        let product = tensor(&superposition(&a), &superposition(&b)).unwrap();
        let rho_s = reduced_from_pure(&product, BipartiteShape::two_qubits(), Subsystem::S).unwrap();
        prop_assert!((rho_s.purity() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn premeasure_interaction_is_involutive(psi in pure_pair_strategy()) {
        let u = measurement_interaction();
        let once = apply(&u, &psi).unwrap();
        let twice = apply(&u, &once).unwrap();
        for (x, y) in twice.amps().iter().zip(psi.amps()) {
            prop_assert!((x - y).norm() <= 1e-12);
        }
    }

    #[test]
    fn entanglement_exists_iff_both_branches_populated(a in amplitudes_strategy()) {
        use entanglab::states::entanglement_report;
        let m = premeasure(&a);
        let report = entanglement_report(m.psi(), m.shape()).unwrap();
        let single_branch = a.p1() <= 1e-9 || a.p2() <= 1e-9;
        if single_branch {
            prop_assert!(report.entanglement_entropy.abs() <= 1e-7);
        } else {
            prop_assert!(report.entanglement_entropy > 0.0);
            prop_assert_eq!(report.schmidt_rank, 2);
        }
    }

    #[test]
    fn joint_distribution_is_normalized_for_random_states(
        psi in pure_pair_strategy(),
        phi_s in -PI..PI,
        phi_a in -PI..PI,
    ) {
        let j = joint_distribution(&PairState::Pure(psi), &PhaseSettings::new(phi_s, phi_a)).unwrap();
        let sum: f64 = j.as_array().iter().sum();
        prop_assert!((sum - 1.0).abs() <= 1e-12);
        for p in j.as_array() {
            prop_assert!((-1e-12..=1.0 + 1e-12).contains(&p));
        }
    }

    #[test]
    fn remote_phase_never_moves_the_marginal(
        psi in pure_pair_strategy(),
        phi_own in -PI..PI,
        phi_remote_1 in -PI..PI,
        phi_remote_2 in -PI..PI,
    ) {
        let state = PairState::Pure(psi);
        let s1 = joint_distribution(&state, &PhaseSettings::new(phi_own, phi_remote_1)).unwrap();
        let s2 = joint_distribution(&state, &PhaseSettings::new(phi_own, phi_remote_2)).unwrap();
        let (p1, _) = marginal(&s1, Subsystem::S);
        let (p2, _) = marginal(&s2, Subsystem::S);
        prop_assert!((p1 - p2).abs() <= 1e-12);

        let a1 = joint_distribution(&state, &PhaseSettings::new(phi_remote_1, phi_own)).unwrap();
        let a2 = joint_distribution(&state, &PhaseSettings::new(phi_remote_2, phi_own)).unwrap();
        let (q1, _) = marginal(&a1, Subsystem::A);
        let (q2, _) = marginal(&a2, Subsystem::A);
        prop_assert!((q1 - q2).abs() <= 1e-12);
    }

    #[test]
    fn statistics_are_two_pi_periodic(
        a in amplitudes_strategy(),
        phi_s in -PI..PI,
        phi_a in -PI..PI,
    ) {
        let state = PairState::from(&premeasure(&a));
        let base = joint_distribution(&state, &PhaseSettings::new(phi_s, phi_a)).unwrap();
        let wrapped = joint_distribution(
            &state,
            &PhaseSettings::new(phi_s + 2.0 * PI, phi_a + 2.0 * PI),
        ).unwrap();
        for (x, y) in base.as_array().iter().zip(wrapped.as_array()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn tsirelson_and_classical_bounds(
        a in -PI..PI, a_prime in -PI..PI, b in -PI..PI, b_prime in -PI..PI,
        weights in amplitudes_strategy(),
    ) {
        let settings = ChshSettings { a, a_prime, b, b_prime };
        let s_bell = chsh(&PairState::bell(), &settings).unwrap();
        prop_assert!(s_bell.abs() <= 2.0 * 2.0f64.sqrt() + 1e-9);

        // the collapsed mixture stays classical for any branch weights
        let mixture = PairState::from(collapse_mixture(&weights));
        let s_mixture = chsh(&mixture, &settings).unwrap();
        prop_assert!(s_mixture.abs() <= 2.0 + 1e-12);
    }

    #[test]
    fn proper_and_improper_mixtures_agree_locally(
        a in amplitudes_strategy(),
        phi in -PI..PI,
    ) {
        use entanglab::states::reduced_states;
        // the local observer's statistics from the entangled state
        let m = premeasure(&a);
        let joint = joint_distribution(
            &PairState::from(&m),
            &PhaseSettings::new(phi, 0.123),
        ).unwrap();
        let (p_u_joint, _) = marginal(&joint, Subsystem::S);

        // the same statistics from the reduced operator alone
        let (rho_s, _) = reduced_states(&m);
        let u = station_unitary(phi);
        let mut p_u_local = 0.0;
        for m_idx in 0..2 {
            for n_idx in 0..2 {
                p_u_local += (u.entry(0, m_idx) * rho_s.entry(m_idx, n_idx) * u.entry(0, n_idx).conj()).re;
            }
        }
        prop_assert!((p_u_joint - p_u_local).abs() <= 1e-12);
    }

    #[test]
    fn decoherence_diagonals_and_trace_survive(
        a in amplitudes_strategy(),
        thetas in proptest::collection::vec(-1.5f64..1.5, 1..6),
    ) {
        let env = EnvironmentSpec::new(thetas).unwrap();
        let rho = density_of(premeasure(&a).psi());
        let out = decohered_state(&rho, &env).unwrap();
        prop_assert!((out.trace() - 1.0).abs() <= 1e-12);
        for i in 0..4 {
            prop_assert!((out.entry(i, i).re - rho.entry(i, i).re).abs() <= 1e-12);
        }
        prop_assert!(decoherence_factor(&env).abs() <= 1.0 + 1e-15);
    }

    #[test]
    fn appending_effective_couplings_never_raises_coherence(
        thetas in proptest::collection::vec(1e-3f64..std::f64::consts::FRAC_PI_4, 2..8),
    ) {
        let mut magnitude = 1.0f64;
        for n in 1..=thetas.len() {
            let env = EnvironmentSpec::new(thetas[..n].to_vec()).unwrap();
            let r = decoherence_factor(&env).abs();
            prop_assert!(r <= magnitude + 1e-15);
            magnitude = r;
        }
    }

    #[test]
    fn sampling_is_deterministic_and_complete(
        seed in any::<u64>(),
        n_events in 1u64..5000,
        shards in 1u32..8,
        phi in -PI..PI,
    ) {
        let joint = joint_distribution(&PairState::bell(), &PhaseSettings::new(phi, 0.0)).unwrap();
        let cfg = SampleConfig::new(seed, n_events).unwrap().with_shards(shards).unwrap();
        let first = sample_joint(&joint, &cfg).unwrap();
        let second = sample_joint(&joint, &cfg).unwrap();
        prop_assert_eq!(first, second);
        prop_assert_eq!(first.total(), n_events);
    }
}
