//! Real-amplitude statevectors and exact gate application.

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError, GateApp};
use crate::gate::GateKind;

/// Normalization tolerance for statevectors.
pub const NORM_TOL: f64 = 1e-12;

/// Largest register the dense engine will allocate (2^30 amplitudes).
const HARD_QUBIT_LIMIT: usize = 30;

#[derive(Debug, Error, PartialEq)]
pub enum StateError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("amplitude vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("statevector norm {norm} is not 1 within {tol}")]
    NotNormalized { norm: f64, tol: f64 },
}

/// A unit vector of real amplitudes over `2^n_qubits` basis states.
///
/// Qubit 0 is the most significant bit of the basis-state index, so
/// `|b0 b1 … b(n−1)⟩` sits at index `b0·2^(n−1) + … + b(n−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<f64>,
}

impl StateVector {
    /// `|0…0⟩` on `n_qubits` qubits. `n_qubits = 0` gives the scalar state 1.
    pub fn zero_state(n_qubits: usize) -> Self {
        assert!(n_qubits <= HARD_QUBIT_LIMIT, "register too large");
        let mut amps = vec![0.0; 1 << n_qubits];
        amps[0] = 1.0;
        StateVector { n_qubits, amps }
    }

    /// The computational basis state with the given index.
    pub fn basis_state(n_qubits: usize, index: usize) -> Self {
        assert!(index < (1 << n_qubits), "basis index out of range");
        let mut amps = vec![0.0; 1 << n_qubits];
        amps[index] = 1.0;
        StateVector { n_qubits, amps }
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<f64>) -> Result<Self, StateError> {
        if amps.len() != (1 << n_qubits) {
            return Err(StateError::LengthMismatch {
                got: amps.len(),
                expected: 1 << n_qubits,
            });
        }
        let s = StateVector { n_qubits, amps };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(StateError::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Tensor product; `self` supplies the high-order qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let n = self.n_qubits + other.n_qubits;
        assert!(n <= HARD_QUBIT_LIMIT, "register too large");
        let mut amps = vec![0.0; 1 << n];
        let block = 1 << other.n_qubits;
        for (i, &a) in self.amps.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.amps.iter().enumerate() {
                amps[i * block + j] = a * b;
            }
        }
        StateVector { n_qubits: n, amps }
    }

    /// Euclidean distance to another state of the same size.
    pub fn distance(&self, other: &StateVector) -> f64 {
        assert_eq!(self.n_qubits, other.n_qubits);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Applies a single gate to the named qubits, identity elsewhere.
pub fn apply_gate(
    state: &StateVector,
    kind: &GateKind,
    qubits: &[usize],
) -> Result<StateVector, StateError> {
    let app = GateApp::new(kind.clone(), qubits.to_vec());
    app.validate(state.n_qubits)?;
    let mut out = state.clone();
    apply_in_place(&mut out.amps, out.n_qubits, kind, qubits, 0);
    Ok(out)
}

/// Runs a whole circuit on a state.
pub fn apply_circuit(state: &StateVector, circuit: &Circuit) -> Result<StateVector, StateError> {
    if circuit.n_qubits() != state.n_qubits {
        return Err(StateError::LengthMismatch {
            got: 1 << circuit.n_qubits(),
            expected: 1 << state.n_qubits,
        });
    }
    let mut out = state.clone();
    for g in circuit.gates() {
        apply_in_place(&mut out.amps, out.n_qubits, &g.kind, &g.qubits, 0);
    }
    Ok(out)
}

fn bit(n: usize, q: usize) -> usize {
    1 << (n - 1 - q)
}

/// Core dispatch. `ctrl_mask` is a set of index bits that must all be 1 for
/// the gate to act; controlled blocks recurse by extending it. Validation has
/// already run, so qubit lists are in range and duplicate-free.
fn apply_in_place(amps: &mut [f64], n: usize, kind: &GateKind, qubits: &[usize], ctrl_mask: usize) {
    let dim = amps.len();
    match kind {
        GateKind::X => {
            let t = bit(n, qubits[0]);
            for i in 0..dim {
                if i & t == 0 && i & ctrl_mask == ctrl_mask {
                    amps.swap(i, i | t);
                }
            }
        }
        GateKind::Cnot => {
            let c = bit(n, qubits[0]);
            let t = bit(n, qubits[1]);
            let m = ctrl_mask | c;
            for i in 0..dim {
                if i & t == 0 && i & m == m {
                    amps.swap(i, i | t);
                }
            }
        }
        GateKind::Toffoli => {
            let c = bit(n, qubits[0]) | bit(n, qubits[1]);
            let t = bit(n, qubits[2]);
            let m = ctrl_mask | c;
            for i in 0..dim {
                if i & t == 0 && i & m == m {
                    amps.swap(i, i | t);
                }
            }
        }
        GateKind::Z => {
            let t = bit(n, qubits[0]);
            let m = ctrl_mask | t;
            for (i, a) in amps.iter_mut().enumerate() {
                if i & m == m {
                    *a = -*a;
                }
            }
        }
        GateKind::H => {
            let t = bit(n, qubits[0]);
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for i in 0..dim {
                if i & t == 0 && i & ctrl_mask == ctrl_mask {
                    let (a, b) = (amps[i], amps[i | t]);
                    amps[i] = s * (a + b);
                    amps[i | t] = s * (a - b);
                }
            }
        }
        GateKind::STheta(theta) => rotate(amps, n, qubits[0], ctrl_mask, theta.cos(), theta.sin()),
        GateKind::SThetaInv(theta) => {
            rotate(amps, n, qubits[0], ctrl_mask, theta.cos(), -theta.sin())
        }
        GateKind::ReflectZero(_) => {
            let reg: usize = qubits.iter().map(|&q| bit(n, q)).fold(0, |a, b| a | b);
            for (i, a) in amps.iter_mut().enumerate() {
                if i & reg == 0 && i & ctrl_mask == ctrl_mask {
                    *a = -*a;
                }
            }
        }
        GateKind::MarkNonZeroFlip(_) => {
            let t = bit(n, qubits[0]);
            let reg: usize = qubits[1..].iter().map(|&q| bit(n, q)).fold(0, |a, b| a | b);
            for i in 0..dim {
                if i & t == 0 && i & reg != 0 && i & ctrl_mask == ctrl_mask {
                    amps.swap(i, i | t);
                }
            }
        }
        GateKind::ControlledBlock(inner) => {
            let mask = ctrl_mask | bit(n, qubits[0]);
            let map = &qubits[1..];
            for g in inner.gates() {
                let outer: Vec<usize> = g.qubits.iter().map(|&q| map[q]).collect();
                apply_in_place(amps, n, &g.kind, &outer, mask);
            }
        }
    }
}

fn rotate(amps: &mut [f64], n: usize, q: usize, ctrl_mask: usize, cos: f64, sin: f64) {
    let t = bit(n, q);
    for i in 0..amps.len() {
        if i & t == 0 && i & ctrl_mask == ctrl_mask {
            let (a, b) = (amps[i], amps[i | t]);
            amps[i] = cos * a - sin * b;
            amps[i | t] = sin * a + cos * b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Angle;
    use std::f64::consts::PI;

    #[test]
    fn x_flips_single_qubit() {
        let s = StateVector::zero_state(1);
        let out = apply_gate(&s, &GateKind::X, &[0]).unwrap();
        assert_eq!(out.amplitudes(), &[0.0, 1.0]);
    }

    #[test]
    fn toffoli_control_condition() {
        // |110⟩ → |111⟩
        let s = StateVector::basis_state(3, 0b110);
        let out = apply_gate(&s, &GateKind::Toffoli, &[0, 1, 2]).unwrap();
        assert_eq!(out, StateVector::basis_state(3, 0b111));
        // |100⟩ unchanged
        let s = StateVector::basis_state(3, 0b100);
        let out = apply_gate(&s, &GateKind::Toffoli, &[0, 1, 2]).unwrap();
        assert_eq!(out, StateVector::basis_state(3, 0b100));
    }

    #[test]
    fn s_theta_column() {
        let s = StateVector::zero_state(1);
        let theta = Angle::from_radians(PI / 6.0);
        let out = apply_gate(&s, &GateKind::STheta(theta), &[0]).unwrap();
        assert!((out.amplitudes()[0] - (PI / 6.0).cos()).abs() < 1e-15);
        assert!((out.amplitudes()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn s_theta_inv_is_inverse() {
        let theta = Angle::from_radians(0.7);
        let c = Circuit::new(
            1,
            vec![
                GateApp::new(GateKind::STheta(theta), vec![0]),
                GateApp::new(GateKind::SThetaInv(theta), vec![0]),
            ],
        )
        .unwrap();
        let s = StateVector::from_amplitudes(1, vec![0.6, 0.8]).unwrap();
        let out = apply_circuit(&s, &c).unwrap();
        assert!(out.distance(&s) < 1e-12);
    }

    #[test]
    fn reflect_zero_and_mark_non_zero() {
        let s = StateVector::from_amplitudes(2, vec![0.5, 0.5, 0.5, 0.5]).unwrap();
        let out = apply_gate(&s, &GateKind::ReflectZero(2), &[0, 1]).unwrap();
        assert_eq!(out.amplitudes(), &[-0.5, 0.5, 0.5, 0.5]);

        // target qubit 0, register qubit 1: flips qubit 0 iff qubit 1 is 1
        let s = StateVector::basis_state(2, 0b01);
        let out = apply_gate(&s, &GateKind::MarkNonZeroFlip(1), &[0, 1]).unwrap();
        assert_eq!(out, StateVector::basis_state(2, 0b11));
        let s = StateVector::basis_state(2, 0b00);
        let out = apply_gate(&s, &GateKind::MarkNonZeroFlip(1), &[0, 1]).unwrap();
        assert_eq!(out, StateVector::basis_state(2, 0b00));
    }

    #[test]
    fn controlled_block_applies_conditionally() {
        let inner = Circuit::new(1, vec![GateApp::new(GateKind::X, vec![0])]).unwrap();
        let cb = GateKind::ControlledBlock(Box::new(inner));
        let s = StateVector::basis_state(2, 0b10);
        let out = apply_gate(&s, &cb, &[0, 1]).unwrap();
        assert_eq!(out, StateVector::basis_state(2, 0b11));
        let s = StateVector::basis_state(2, 0b00);
        let out = apply_gate(&s, &cb, &[0, 1]).unwrap();
        assert_eq!(out, StateVector::basis_state(2, 0b00));
    }

    #[test]
    fn rejects_duplicate_indices() {
        let s = StateVector::zero_state(2);
        let err = apply_gate(&s, &GateKind::Cnot, &[1, 1]);
        assert!(matches!(
            err,
            Err(StateError::Circuit(CircuitError::DuplicateQubit { .. }))
        ));
    }
}
