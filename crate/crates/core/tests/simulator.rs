//! Simulation-layer integration tests: independent oracles for the
//! restricted-error metric, operator materialization, and the rotation
//! spectrum, plus property tests over random circuits.

use gatesmith_core::angle::Angle;
use gatesmith_core::circuit::{Circuit, GateApp};
use gatesmith_core::gate::GateKind;
use gatesmith_core::metric::restricted_error;
use gatesmith_core::operator::{circuit_unitary, RealOperator};
use gatesmith_core::spectrum::rotation_spectrum;
use gatesmith_core::state::{apply_circuit, StateVector};

use nalgebra::DMatrix;
use proptest::prelude::*;

// --- hand-rolled dense oracles (independent of the simulator path) ---------

fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    a.kronecker(b)
}

fn h_matrix() -> DMatrix<f64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_row_slice(2, 2, &[s, s, s, -s])
}

fn toffoli_matrix() -> DMatrix<f64> {
    let mut m = DMatrix::zeros(8, 8);
    for i in 0..8usize {
        let j = if i & 0b110 == 0b110 { i ^ 1 } else { i };
        m[(j, i)] = 1.0;
    }
    m
}

#[test]
fn hhh_toffoli_squared_trace_via_matrix_oracle() {
    let h3 = kron(&kron(&h_matrix(), &h_matrix()), &h_matrix());
    let a = &h3 * toffoli_matrix();
    let oracle = &a * &a;
    assert!((oracle.trace() - 4.5).abs() < 1e-12);

    // simulator route
    let round = vec![
        GateApp::new(GateKind::Toffoli, vec![0, 1, 2]),
        GateApp::new(GateKind::H, vec![0]),
        GateApp::new(GateKind::H, vec![1]),
        GateApp::new(GateKind::H, vec![2]),
    ];
    let mut gates = round.clone();
    gates.extend(round);
    let u = circuit_unitary(&Circuit::new(3, gates).unwrap()).unwrap();
    assert!((u.trace() - 4.5).abs() < 1e-12);
    for i in 0..8 {
        for j in 0..8 {
            assert!((u.matrix()[(i, j)] - oracle[(i, j)]).abs() < 1e-13);
        }
    }
}

// --- restricted error against a brute-force net -----------------------------

/// Maximizes ‖C(ξ⊗Ψ) − (Uξ)⊗Ψ‖ over a 10⁴-point net of unit data states.
fn restricted_error_net_oracle(
    target: &RealOperator,
    circuit: &Circuit,
    ancilla: &StateVector,
) -> f64 {
    assert_eq!(target.n_qubits(), 1);
    let mut worst: f64 = 0.0;
    let n_points = 10_000;
    for i in 0..n_points {
        let t = std::f64::consts::TAU * (i as f64) / (n_points as f64);
        let xi = StateVector::from_amplitudes(1, vec![t.cos(), t.sin()]).unwrap();
        let input = xi.tensor(ancilla);
        let actual = apply_circuit(&input, circuit).unwrap();
        let ideal = target.apply(&xi).unwrap().tensor(ancilla);
        worst = worst.max(actual.distance(&ideal));
    }
    worst
}

#[test]
fn restricted_error_matches_net_oracle() {
    let theta = Angle::from_radians(0.9);
    // a circuit that approximates Z badly: rotate, flip phase, rotate back a
    // different amount, entangling slightly with the ancilla
    let circuit = Circuit::new(
        2,
        vec![
            GateApp::new(GateKind::STheta(theta), vec![0]),
            GateApp::new(GateKind::Z, vec![0]),
            GateApp::new(GateKind::Cnot, vec![0, 1]),
            GateApp::new(GateKind::SThetaInv(theta), vec![0]),
        ],
    )
    .unwrap();
    let z = circuit_unitary(&Circuit::new(1, vec![GateApp::new(GateKind::Z, vec![0])]).unwrap())
        .unwrap();
    let anc = StateVector::from_amplitudes(1, vec![0.8, 0.6]).unwrap();
    let exact = restricted_error(&z, &circuit, &anc).unwrap();
    let net = restricted_error_net_oracle(&z, &circuit, &anc);
    assert!((exact - net).abs() < 1e-6, "exact {exact} vs net {net}");
    assert!(net <= exact + 1e-12);
}

#[test]
fn rotation_spectrum_angles_match_complex_eigenvalues() {
    // independent oracle: nalgebra's complex eigenvalues of the same matrix
    let theta = Angle::pi_fraction(1, 6);
    let round = vec![
        GateApp::new(GateKind::Cnot, vec![0, 1]),
        GateApp::new(GateKind::STheta(theta), vec![0]),
        GateApp::new(GateKind::STheta(theta), vec![1]),
    ];
    let mut gates = round.clone();
    gates.extend(round);
    let u = circuit_unitary(&Circuit::new(2, gates).unwrap()).unwrap();
    let summary = rotation_spectrum(&u).unwrap();

    let complex = u.matrix().clone().complex_eigenvalues();
    let mut oracle_angles: Vec<f64> = complex
        .iter()
        .filter(|z| z.im > 1e-9)
        .map(|z| z.im.atan2(z.re))
        .collect();
    oracle_angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let got: Vec<f64> = summary.rotations.iter().map(|p| p.angle).collect();
    assert_eq!(got.len(), oracle_angles.len());
    for (g, o) in got.iter().zip(&oracle_angles) {
        assert!((g - o).abs() < 1e-10, "{g} vs {o}");
    }
}

// --- JSON wire format --------------------------------------------------------

#[test]
fn circuit_json_round_trip_and_shape() {
    let theta = std::f64::consts::PI / 6.0;
    let c = Circuit::new(
        4,
        vec![
            GateApp::new(GateKind::Toffoli, vec![0, 1, 2]),
            GateApp::new(GateKind::STheta(Angle::from_radians(theta)), vec![3]),
        ],
    )
    .unwrap();
    let json = serde_json::to_string(&c).unwrap();
    assert!(json.contains("\"kind\":\"toffoli\""));
    assert!(json.contains("\"qubits\":[0,1,2]"));
    assert!(json.contains("\"kind\":\"s_theta\""));
    assert!(json.contains("\"n_qubits\":4"));
    let back: Circuit = serde_json::from_str(&json).unwrap();
    assert_eq!(back, c);
}

#[test]
fn controlled_block_json_round_trip() {
    let inner = Circuit::new(1, vec![GateApp::new(GateKind::X, vec![0])]).unwrap();
    let c = Circuit::new(
        2,
        vec![GateApp::new(
            GateKind::ControlledBlock(Box::new(inner)),
            vec![0, 1],
        )],
    )
    .unwrap();
    let json = serde_json::to_string(&c).unwrap();
    let back: Circuit = serde_json::from_str(&json).unwrap();
    assert_eq!(back, c);
}

#[test]
fn invalid_circuit_json_is_rejected() {
    let json = r#"{"n_qubits": 2, "gates": [{"kind": "cnot", "qubits": [0, 2]}]}"#;
    assert!(serde_json::from_str::<Circuit>(json).is_err());
}

// --- property tests ----------------------------------------------------------

fn arb_gate(n: usize) -> impl Strategy<Value = GateApp> {
    let idx = 0..n;
    prop_oneof![
        idx.clone().prop_map(|q| GateApp::new(GateKind::X, vec![q])),
        idx.clone().prop_map(|q| GateApp::new(GateKind::Z, vec![q])),
        idx.clone().prop_map(|q| GateApp::new(GateKind::H, vec![q])),
        (idx.clone(), 0.0..std::f64::consts::TAU)
            .prop_map(|(q, t)| GateApp::new(GateKind::STheta(Angle::from_radians(t)), vec![q])),
        (0..n, 0..n)
            .prop_filter("distinct", |(a, b)| a != b)
            .prop_map(|(a, b)| GateApp::new(GateKind::Cnot, vec![a, b])),
        Just(GateApp::new(GateKind::Toffoli, vec![0, 1, 2])),
        Just(GateApp::new(GateKind::ReflectZero(2), vec![0, 1])),
        Just(GateApp::new(GateKind::MarkNonZeroFlip(2), vec![2, 0, 1])),
    ]
}

fn arb_circuit(n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(arb_gate(n), 0..max_len)
        .prop_map(move |gates| Circuit::new(n, gates).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_preserved(c in arb_circuit(3, 12), seed in 0u64..1000) {
        // pseudo-random unit input state
        let dim = 8;
        let mut amps: Vec<f64> = (0..dim)
            .map(|i| (((seed.wrapping_mul(2654435761).wrapping_add(i as u64 * 40503)) % 1000) as f64 / 500.0) - 1.0)
            .collect();
        let norm: f64 = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-6 { amps[0] += 1.0; }
        let norm: f64 = amps.iter().map(|a| a * a).sum::<f64>().sqrt();
        for a in &mut amps { *a /= norm; }
        let s = StateVector::from_amplitudes(3, amps).unwrap();
        let out = apply_circuit(&s, &c).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn composition_is_consistent(c1 in arb_circuit(3, 8), c2 in arb_circuit(3, 8)) {
        let u1 = circuit_unitary(&c1).unwrap();
        let u2 = circuit_unitary(&c2).unwrap();
        let chained = circuit_unitary(&c1.chain(&c2).unwrap()).unwrap();
        let product = u2.mul(&u1).unwrap();
        let mut worst: f64 = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                worst = worst.max((chained.matrix()[(i, j)] - product.matrix()[(i, j)]).abs());
            }
        }
        prop_assert!(worst < 1e-10);
    }

    #[test]
    fn circuits_denote_orthogonal_operators(c in arb_circuit(3, 10)) {
        let u = circuit_unitary(&c).unwrap();
        prop_assert!(u.orthogonality_defect() < 1e-10);
    }

    #[test]
    fn spectrum_reconstructs_the_operator(c in arb_circuit(3, 10)) {
        let u = circuit_unitary(&c).unwrap();
        let summary = rotation_spectrum(&u).unwrap();
        prop_assert_eq!(
            summary.plus_one_multiplicity + summary.minus_one_multiplicity
                + 2 * summary.rotations.len(),
            8
        );
        for p in &summary.rotations {
            let (a, b) = &p.basis;
            prop_assert!((a.norm() - 1.0).abs() < 1e-10);
            prop_assert!((b.norm() - 1.0).abs() < 1e-10);
            prop_assert!(a.dot(b).abs() < 1e-10);
            prop_assert!(p.angle > 0.0 && p.angle < std::f64::consts::PI);
        }
        let rebuilt = summary.reconstruct();
        prop_assert!(rebuilt.distance(&u).unwrap() < 1e-8);
    }

    #[test]
    fn json_round_trip(c in arb_circuit(3, 10)) {
        let json = serde_json::to_string(&c).unwrap();
        let back: Circuit = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, c);
    }
}
