//! Approximating σᶻ with a basis-changing rotation and classical gates.
//!
//! The basis gate produces biased "quantum coins" `U_θ|0⟩` and `U_θ|1⟩`. On a
//! register of k coin pairs, swapping |00⟩ and |11⟩ inside the first equal
//! pair flips the sign of exactly the unbiased component of each pair state,
//! so conditioning that permutation on a data qubit approximates a sign flip
//! on it. The residual is the weight of the all-pairs-differ component,
//! `(cos⁴θ + sin⁴θ)^{k/2}`, and the approximation error is exactly twice that.

use crate::angle::Angle;
use crate::circuit::{Circuit, GateApp};
use crate::gate::GateKind;
use crate::state::StateVector;
use crate::synthesis::SynthesisError;

/// The phase ancilla `(U_θ|0⟩ ⊗ U_θ|1⟩)^{⊗k}` on 2k qubits.
pub fn phase_ancilla(theta: Angle, k: usize) -> StateVector {
    let c = theta.cos();
    let s = theta.sin();
    let u0 = StateVector::from_amplitudes(1, vec![c, s]).expect("unit column");
    let u1 = StateVector::from_amplitudes(1, vec![-s, c]).expect("unit column");
    let pair = u0.tensor(&u1);
    let mut out = StateVector::zero_state(0);
    for _ in 0..k {
        out = out.tensor(&pair);
    }
    out
}

/// `2(cos⁴θ + sin⁴θ)^{k/2}`: the restricted error of the sign-flip circuit
/// against σᶻ on the phase ancilla of size k (attained exactly).
pub fn sigma_z_error_bound(theta: Angle, k: usize) -> f64 {
    let c = theta.cos();
    let s = theta.sin();
    2.0 * (c.powi(4) + s.powi(4)).powf(k as f64 / 2.0)
}

/// Smallest k whose error bound is at most ε. The bound starts at 2, so any
/// ε below that is meaningful.
pub fn choose_k_sigma_z(theta: Angle, eps: f64) -> Result<usize, SynthesisError> {
    if !(eps > 0.0 && eps < 2.0) {
        return Err(SynthesisError::EpsilonOutOfRange(eps));
    }
    if theta.is_multiple_of_half_pi() {
        // cos⁴+sin⁴ = 1 there; the bound never drops below 2
        return Err(SynthesisError::ThetaMultipleOfHalfPi(theta.radians()));
    }
    let c = theta.cos();
    let s = theta.sin();
    let base = c.powi(4) + s.powi(4);
    // 2·base^{k/2} ≤ ε  ⇔  k ≥ 2·ln(2/ε)/ln(1/base)
    let k = (2.0 * (2.0 / eps).ln() / (1.0 / base).ln()).ceil() as usize;
    let mut k = k.max(1);
    while sigma_z_error_bound(theta, k) > eps {
        k += 1;
    }
    Ok(k)
}

/// A multi-controlled X in the intermediate representation: plain gates up to
/// two controls, nested controlled blocks beyond.
pub(crate) fn multi_controlled_x(controls: &[usize], target: usize) -> GateApp {
    match controls.len() {
        0 => GateApp::new(GateKind::X, vec![target]),
        1 => GateApp::new(GateKind::Cnot, vec![controls[0], target]),
        2 => GateApp::new(GateKind::Toffoli, vec![controls[0], controls[1], target]),
        m => {
            // inner circuit on m qubits: controls[1..] at 0..m−2, target at m−1
            let inner_controls: Vec<usize> = (0..m - 1).collect();
            let inner = Circuit::new(m, vec![multi_controlled_x(&inner_controls, m - 1)])
                .expect("index mapping is dense");
            let mut qubits = vec![controls[0]];
            qubits.extend_from_slice(&controls[1..]);
            qubits.push(target);
            GateApp::new(GateKind::ControlledBlock(Box::new(inner)), qubits)
        }
    }
}

/// The sign-flip circuit on 1 + 2k qubits: conditioned on qubit 0, the first
/// coin pair with equal bits is flipped (both bits), and nothing happens when
/// every pair differs.
///
/// Pair i (1-based) occupies qubits (2i−1, 2i). The case analysis is realized
/// by XOR-encoding each pair in place, flipping the low bit of the first
/// equal pair under a priority condition, and decoding.
pub fn build_sigma_z_tilde(theta: Angle, k: usize) -> Result<Circuit, SynthesisError> {
    if k < 1 {
        return Err(SynthesisError::KTooSmallForSigmaZ);
    }
    if theta.is_multiple_of_half_pi() {
        return Err(SynthesisError::ThetaMultipleOfHalfPi(theta.radians()));
    }
    let n = 1 + 2 * k;
    let mut gates = Vec::new();
    let pair = |i: usize| (1 + 2 * i, 2 + 2 * i); // i in 0..k

    // encode: second bit of each pair becomes b ⊕ b′
    for i in 0..k {
        let (p, q) = pair(i);
        gates.push(GateApp::new(GateKind::Cnot, vec![p, q]));
    }
    // priority flips: pair i flips iff the data bit is set, pairs before it
    // all differ, and pair i itself does not
    for i in 0..k {
        let (p, q) = pair(i);
        gates.push(GateApp::new(GateKind::X, vec![q]));
        let mut controls = vec![0];
        for j in 0..i {
            controls.push(pair(j).1);
        }
        controls.push(q);
        gates.push(multi_controlled_x(&controls, p));
        gates.push(GateApp::new(GateKind::X, vec![q]));
    }
    // decode
    for i in 0..k {
        let (p, q) = pair(i);
        gates.push(GateApp::new(GateKind::Cnot, vec![p, q]));
    }

    Ok(Circuit::new(n, gates).expect("indices within 1+2k"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use crate::metric::restricted_error;
    use crate::operator::circuit_unitary;
    use crate::state::apply_circuit;
    use std::f64::consts::PI;

    #[test]
    fn phase_ancilla_values() {
        // k = 0: the scalar state
        let s = phase_ancilla(Angle::from_radians(1.0), 0);
        assert_eq!(s.amplitudes(), &[1.0]);
        // θ = π/4, k = 1: (−1/2, 1/2, −1/2, 1/2)
        let s = phase_ancilla(Angle::pi_fraction(1, 4), 1);
        let expect = [-0.5, 0.5, -0.5, 0.5];
        for (a, e) in s.amplitudes().iter().zip(expect) {
            assert!((a - e).abs() < 1e-15);
        }
    }

    #[test]
    fn sign_flip_permutation_examples() {
        let theta = Angle::pi_fraction(1, 6);
        let c = build_sigma_z_tilde(theta, 2).unwrap();
        // all pairs differing: |1⟩⊗|01 10⟩ unchanged
        let idx = 0b10110;
        let out = apply_circuit(&StateVector::basis_state(5, idx), &c).unwrap();
        assert_eq!(out, StateVector::basis_state(5, idx));
        // first pair equal: |1⟩⊗|00 01⟩ → |1⟩⊗|11 01⟩
        let out = apply_circuit(&StateVector::basis_state(5, 0b10001), &c).unwrap();
        assert_eq!(out, StateVector::basis_state(5, 0b11101));
        // data bit clear: nothing happens
        let out = apply_circuit(&StateVector::basis_state(5, 0b00001), &c).unwrap();
        assert_eq!(out, StateVector::basis_state(5, 0b00001));
    }

    #[test]
    fn sign_flip_is_involution() {
        let theta = Angle::pi_fraction(1, 5);
        let c = build_sigma_z_tilde(theta, 2).unwrap();
        let u = circuit_unitary(&c.chain(&c).unwrap()).unwrap();
        let id = crate::operator::RealOperator::identity(32).unwrap();
        assert!(u.distance(&id).unwrap() < 1e-12);
    }

    #[test]
    fn restricted_error_attains_the_bound() {
        for (theta, k) in [(PI / 4.0, 3), (PI / 6.0, 2), (1.0, 4)] {
            let theta = Angle::from_radians(theta);
            let circuit = build_sigma_z_tilde(theta, k).unwrap();
            let anc = phase_ancilla(theta, k);
            let z = circuit_unitary(
                &Circuit::new(1, vec![GateApp::new(GateKind::Z, vec![0])]).unwrap(),
            )
            .unwrap();
            let err = restricted_error(&z, &circuit, &anc).unwrap();
            let bound = sigma_z_error_bound(theta, k);
            assert!((err - bound).abs() < 1e-12, "err {err} vs bound {bound}");
        }
    }

    #[test]
    fn k_selection_examples() {
        let quarter = Angle::pi_fraction(1, 4);
        assert_eq!(choose_k_sigma_z(quarter, 0.25).unwrap(), 6);
        assert_eq!(choose_k_sigma_z(quarter, 1.9).unwrap(), 1);
        let sixth = Angle::pi_fraction(1, 6);
        assert_eq!(choose_k_sigma_z(sixth, 0.01).unwrap(), 23);
        assert!(matches!(
            choose_k_sigma_z(Angle::pi_fraction(1, 2), 0.5),
            Err(SynthesisError::ThetaMultipleOfHalfPi(_))
        ));
        assert!(matches!(
            choose_k_sigma_z(sixth, 2.5),
            Err(SynthesisError::EpsilonOutOfRange(_))
        ));
    }
}
