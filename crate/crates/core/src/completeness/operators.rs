//! Witness operators for the two completeness cases.

use crate::angle::Angle;
use crate::circuit::{Circuit, GateApp};
use crate::gate::GateKind;
use crate::operator::{circuit_unitary, RealOperator};

/// The 4×4 operator `(U_θ ⊗ U_θ · CNOT[1,2])²`, CNOT applied first.
pub fn build_cnot_case_operator(theta: Angle) -> RealOperator {
    let round = vec![
        GateApp::new(GateKind::Cnot, vec![0, 1]),
        GateApp::new(GateKind::STheta(theta), vec![0]),
        GateApp::new(GateKind::STheta(theta), vec![1]),
    ];
    let mut gates = round.clone();
    gates.extend(round);
    let circuit = Circuit::new(2, gates).expect("static circuit");
    circuit_unitary(&circuit).expect("2 qubits")
}

/// The 8×8 operator `(H ⊗ H ⊗ H · Toffoli[1,2,3])²`, Toffoli applied first.
pub fn build_toffoli_case_operator() -> RealOperator {
    let round = vec![
        GateApp::new(GateKind::Toffoli, vec![0, 1, 2]),
        GateApp::new(GateKind::H, vec![0]),
        GateApp::new(GateKind::H, vec![1]),
        GateApp::new(GateKind::H, vec![2]),
    ];
    let mut gates = round.clone();
    gates.extend(round);
    let circuit = Circuit::new(3, gates).expect("static circuit");
    circuit_unitary(&circuit).expect("3 qubits")
}

/// The rotation angle of the CNOT-case operator: `2·arccos(cos²θ)`.
pub fn cnot_case_angle(theta: Angle) -> f64 {
    2.0 * theta.cos().powi(2).acos()
}

/// The rotation angle of the Toffoli-case operator: `π − arccos(3/4)`.
pub fn toffoli_case_angle() -> f64 {
    std::f64::consts::PI - 0.75f64.acos()
}

/// The six +1 eigenvectors of the Toffoli-case operator (normalized), in the
/// order the escape chain consumes them.
pub fn toffoli_case_plus_vectors() -> Vec<Vec<f64>> {
    let mut vecs = vec![vec![0.0; 8]; 6];
    vecs[0][0b000] = 1.0;
    vecs[1][0b010] = 1.0;
    vecs[2][0b100] = 1.0;
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    vecs[3][0b001] = r2;
    vecs[3][0b011] = r2;
    let r3 = 1.0 / 3.0f64.sqrt();
    vecs[4][0b101] = r3;
    vecs[4][0b110] = r3;
    vecs[4][0b111] = r3;
    vecs[5][0b011] = r2;
    vecs[5][0b101] = -r2;
    vecs
}
