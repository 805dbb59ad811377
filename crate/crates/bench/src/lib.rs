//! Shared fixtures for the criterion benchmarks.

use gatesmith_core::angle::Angle;
use gatesmith_core::circuit::{Circuit, GateApp};
use gatesmith_core::gate::GateKind;

/// A layered circuit mixing rotations and entangling permutations.
pub fn layered_circuit(n_qubits: usize, layers: usize) -> Circuit {
    let theta = Angle::from_radians(0.9);
    let mut gates = Vec::new();
    for layer in 0..layers {
        for q in 0..n_qubits {
            gates.push(GateApp::new(GateKind::STheta(theta), vec![q]));
        }
        for q in 0..n_qubits.saturating_sub(1) {
            gates.push(GateApp::new(GateKind::Cnot, vec![q, q + 1]));
        }
        if layer % 2 == 1 && n_qubits >= 3 {
            gates.push(GateApp::new(GateKind::Toffoli, vec![0, 1, 2]));
        }
    }
    Circuit::new(n_qubits, gates).expect("static layout")
}
