//! Completeness-layer integration tests.

use gatesmith_core::angle::Angle;
use gatesmith_core::completeness::{
    build_cnot_case_operator, build_toffoli_case_operator, cnot_analogue_certificate,
    cnot_case_angle, density_probe, rational_witness, stabilizer_escape_suite,
    toffoli_case_certificate, CompletenessCase, DensityProbeConfig,
};
use gatesmith_core::operator::RealOperator;
use gatesmith_core::spectrum::rotation_spectrum;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[test]
fn cnot_case_rotation_law_over_random_angles() {
    let mut rng = ChaCha20Rng::seed_from_u64(42);
    let mut tested = 0;
    while tested < 50 {
        let theta = Angle::from_radians(rng.gen_range(0.0..std::f64::consts::TAU));
        if theta.is_multiple_of_quarter_pi() {
            continue;
        }
        // stay off the near-degenerate band so the +1 gap assumption holds
        let expected = cnot_case_angle(theta);
        if !(1e-3..=std::f64::consts::PI - 1e-3).contains(&expected) {
            continue;
        }
        tested += 1;
        let u = build_cnot_case_operator(theta);
        let s = rotation_spectrum(&u).unwrap();
        assert_eq!(s.plus_one_multiplicity, 2, "theta {theta:?}");
        assert_eq!(s.rotations.len(), 1);
        assert!(
            (s.rotations[0].angle - expected).abs() < 1e-9,
            "theta {theta:?}: {} vs {expected}",
            s.rotations[0].angle
        );
    }
}

#[test]
fn witness_and_certificate_agree_on_the_toffoli_case() {
    let cert = toffoli_case_certificate();
    assert!(cert.proves_incommensurate());
    let alpha = std::f64::consts::PI - 0.75f64.acos();
    let w = rational_witness(alpha / std::f64::consts::PI, 1_000_000).unwrap();
    assert!(w.best_rational.is_none());

    // the Hadamard analogue rotates by the rational 2π/3: witness finds it
    let analogue = cnot_analogue_certificate();
    assert!(!analogue.proves_incommensurate());
    let w = rational_witness((2.0 * std::f64::consts::PI / 3.0) / std::f64::consts::PI, 100)
        .unwrap();
    assert_eq!(w.best_rational, Some((2, 3)));
}

#[test]
fn quarter_pi_case_yields_rational_rotation() {
    // θ = π/4: the law gives α = 2π/3, and the witness confirms rationality
    let alpha = cnot_case_angle(Angle::pi_fraction(1, 4));
    let w = rational_witness(alpha / std::f64::consts::PI, 1_000_000).unwrap();
    assert_eq!(w.best_rational, Some((2, 3)));
    assert!(w.residual < 1e-15);
}

#[test]
fn escape_suites_run_and_report() {
    let cnot = stabilizer_escape_suite(&CompletenessCase::Cnot {
        theta: Angle::pi_fraction(1, 6),
    })
    .unwrap();
    assert!(cnot.checks.iter().all(|c| c.holds));

    let toff = stabilizer_escape_suite(&CompletenessCase::Toffoli).unwrap();
    assert_eq!(toff.checks.len(), 6);
    assert!(toff.duplication_note.is_some());
    let search = toff.chain_search.as_ref().unwrap();
    assert_eq!(search.viable_per_position.len(), 6);
}

#[test]
fn toffoli_case_density_probe_improves_with_word_length() {
    // generators: the witness operator and two of the escape operators
    let u = build_toffoli_case_operator();
    let report = stabilizer_escape_suite(&CompletenessCase::Toffoli).unwrap();
    drop(report);
    let h3 = {
        use gatesmith_core::circuit::{Circuit, GateApp};
        use gatesmith_core::gate::GateKind;
        gatesmith_core::operator::circuit_unitary(
            &Circuit::new(3, vec![GateApp::new(GateKind::H, vec![2])]).unwrap(),
        )
        .unwrap()
    };
    let toff = {
        use gatesmith_core::circuit::{Circuit, GateApp};
        use gatesmith_core::gate::GateKind;
        gatesmith_core::operator::circuit_unitary(
            &Circuit::new(3, vec![GateApp::new(GateKind::Toffoli, vec![1, 2, 0])]).unwrap(),
        )
        .unwrap()
    };
    let cfg = DensityProbeConfig {
        max_word_len: 4,
        n_targets: 12,
        seed: 3,
    };
    let report = density_probe(&[u, h3, toff], &cfg).unwrap();
    assert_eq!(report.dim, 8);
    for w in report.rows.windows(2) {
        assert!(w[1].min_distance <= w[0].min_distance + 1e-12);
    }
    assert!(report.rows.last().unwrap().words_kept > report.rows[0].words_kept);
}

#[test]
fn probe_rejects_oversized_requests() {
    let id = RealOperator::identity(2).unwrap();
    let cfg = DensityProbeConfig {
        max_word_len: 13,
        n_targets: 2,
        seed: 0,
    };
    assert!(density_probe(&[id], &cfg).is_err());
}
