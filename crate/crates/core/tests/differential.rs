mod common;

use kraus_entanglement::bipartite::{dc2_de0sq, g_decomposition, g_term, Side};
use kraus_entanglement::channels::{amplitude_damping, dephasing, kraus_from_unitary, phase_flip};
use kraus_entanglement::classify::{classify, DecisionTier};
use kraus_entanglement::fourqubit::{correspondence_check, evolve4, residual, effective_qubit_tangle};
use kraus_entanglement::oracle::random::{self, seeded};
use kraus_entanglement::oracle::{
    evolve3, evolve3_unitary, pair_concurrence_sq, partial_trace, wootters_concurrence_sq,
};
use kraus_entanglement::{EntanglementReport, FamilyLabel, InitialReduced, KrausPair};

use common::{mixed_pair, oracle_tangles};

#[test]
fn builtin_channels_match_oracle() {
    for (k, build) in [amplitude_damping, dephasing, phase_flip].iter().enumerate() {
        for i in 0..=20 {
            let p = i as f64 / 20.0;
            let kp = build(p).unwrap();
            let r0 = random::initial_reduced(&mut seeded(100 + k as u64, i));
            let closed = EntanglementReport::closed_form(&kp, &r0, 1e-9).unwrap().tangles;
            let oracle = oracle_tangles(&kp, &r0);
            assert!(closed.max_abs_diff(&oracle) < 1e-12, "channel {k} p {p}");
        }
    }
}

#[test]
fn random_pairs_match_oracle() {
    for i in 0..500 {
        let (kp, r0) = mixed_pair(21, i);
        let closed = EntanglementReport::closed_form(&kp, &r0, 1e-9).unwrap().tangles;
        assert!(closed.max_abs_diff(&oracle_tangles(&kp, &r0)) < 1e-12, "instance {i}");
    }
}

#[test]
fn spectral_concurrence_route_is_close_to_ensemble_route() {
    // the square root of near-zero eigenvalues limits the spectral route
    let mut worst = 0f64;
    for i in 0..300 {
        let (kp, r0) = mixed_pair(22, i);
        let s = evolve3(&kp, &r0.purification());
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let spectral = wootters_concurrence_sq(&partial_trace(&s, &[a, b])).unwrap();
            worst = worst.max((spectral - pair_concurrence_sq(&s, a, b).unwrap()).abs());
        }
    }
    assert!(worst < 1e-6, "{worst:e}");
}

#[test]
fn unitary_and_kraus_evolution_agree() {
    for i in 0..100 {
        let mut rng = seeded(23, i);
        let u = random::unitary4(&mut rng);
        let psi0 = random::two_qubit_state(&mut rng);
        let a = evolve3(&kraus_from_unitary(&u).unwrap(), &psi0);
        let b = evolve3_unitary(&u, &psi0);
        for (x, y) in a.amps().iter().zip(b.amps()) {
            assert!((x - y).norm() < 1e-14);
        }
    }
}

#[test]
fn g_decomposition_reassembles_g() {
    for i in 0..200 {
        let (kp, r0) = mixed_pair(24, i);
        let d = g_decomposition(&kp, r0.rho_ee(), r0.phi(), r0.e0sq()).unwrap();
        assert!((d.g - g_term(&kp, &r0).unwrap()).abs() < 1e-12, "instance {i}");
    }
}

#[test]
fn derivative_matches_closed_form_difference() {
    const H: f64 = 1e-6;
    for i in 0..50 {
        let mut rng = seeded(25, i);
        let kp = random::w_class_pair(&mut rng);
        let (rho, phi) = (0.3 + 0.4 * rand::Rng::random::<f64>(&mut rng), 2.0);
        let e0sq = 0.5 * 4.0 * rho * (1.0 - rho);
        let at = |e: f64| {
            let r0 = InitialReduced::from_e0sq(rho, phi, e).unwrap();
            EntanglementReport::closed_form(&kp, &r0, 1e-9).unwrap().tangles
        };
        let (up, down) = (at(e0sq + H), at(e0sq - H));
        let fd_s = (up.c2_s_spe - down.c2_s_spe) / (2.0 * H);
        let fd_e = (up.c2_e_ssp - down.c2_e_ssp) / (2.0 * H);
        assert!((fd_s - dc2_de0sq(&kp, rho, phi, e0sq, Side::S).unwrap()).abs() < 1e-6);
        assert!((fd_e - dc2_de0sq(&kp, rho, phi, e0sq, Side::E).unwrap()).abs() < 1e-6);
    }
}

#[test]
fn derivative_rejects_ghz_pairs() {
    let kp = dephasing(0.5).unwrap();
    assert!(dc2_de0sq(&kp, 0.5, 0.0, 0.4, Side::S).is_err());
}

#[test]
fn direct_tier_agrees_with_oracle_near_boundary() {
    let kp = amplitude_damping(1e-9).unwrap();
    let r0 = InitialReduced::from_e0sq(0.9, 0.0, 0.36).unwrap();
    let c = classify(&kp, &r0, 1e-9).unwrap();
    assert_eq!(c.tier, DecisionTier::DirectComputation);
    assert_eq!(c.label, FamilyLabel::WGenuineByDirect);
}

#[test]
fn identity_prime_channel_reduces_to_three_qubits() {
    for i in 0..50 {
        let (kp, r0) = mixed_pair(26, i);
        let rep = correspondence_check(&kp, &KrausPair::identity(), &r0.purification()).unwrap();
        assert!(rep.max_concurrence_residual() < 1e-12);
        assert!(rep.max_tangle_residual() < 1e-12);
        let s = evolve4(&kp, &KrausPair::identity(), &r0.purification());
        assert!(residual(&s, 3).unwrap().abs() < 1e-12);
    }
}

#[test]
fn residual_bounds_effective_tangle() {
    for i in 0..100 {
        let mut rng = seeded(27, i);
        let kp = random::kraus_pair(&mut rng);
        let kpp = random::w_class_pair(&mut rng);
        let s = evolve4(&kp, &kpp, &random::two_qubit_state(&mut rng));
        for (q, pair) in [(1, (1, 2)), (2, (1, 2)), (0, (0, 3)), (3, (0, 3))] {
            let r = residual(&s, q).unwrap();
            assert!(r - effective_qubit_tangle(&s, pair).unwrap() >= -1e-8);
        }
    }
}
