//! The restricted approximation error.
//!
//! A circuit on `N` qubits approximates a target on the first `r` qubits,
//! with the remaining `N − r` qubits fixed in a prepared ancilla state. The
//! error is the worst case over data inputs of the output deviation:
//!
//! ```text
//!   max over unit ξ  ‖ C(ξ⊗Ψ) − (Uξ)⊗Ψ ‖
//! ```
//!
//! which is the largest singular value of the linear map
//! `ξ ↦ C(ξ⊗Ψ) − (Uξ)⊗Ψ`.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::circuit::Circuit;
use crate::operator::RealOperator;
use crate::state::{apply_circuit, StateVector};

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("target on {target_qubits} qubits plus ancilla on {ancilla_qubits} does not match circuit on {circuit_qubits}")]
    DimensionMismatch {
        target_qubits: usize,
        ancilla_qubits: usize,
        circuit_qubits: usize,
    },
    #[error("ancilla state norm {norm} is not 1")]
    AncillaNotNormalized { norm: f64 },
}

/// Worst-case deviation of `circuit` from `target ⊗ I` on inputs `ξ ⊗ ancilla`.
///
/// The data register is the first `r` qubits, the ancilla the last `N − r`.
pub fn restricted_error(
    target: &RealOperator,
    circuit: &Circuit,
    ancilla: &StateVector,
) -> Result<f64, MetricError> {
    let r = target.n_qubits();
    let n_anc = ancilla.n_qubits();
    if r + n_anc != circuit.n_qubits() {
        return Err(MetricError::DimensionMismatch {
            target_qubits: r,
            ancilla_qubits: n_anc,
            circuit_qubits: circuit.n_qubits(),
        });
    }
    if (ancilla.norm() - 1.0).abs() > 1e-9 {
        return Err(MetricError::AncillaNotNormalized {
            norm: ancilla.norm(),
        });
    }

    let data_dim = 1usize << r;
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(data_dim);
    for j in 0..data_dim {
        let input = StateVector::basis_state(r, j).tensor(ancilla);
        let actual = apply_circuit(&input, circuit).expect("dimensions checked");
        // ideal output: (U e_j) ⊗ Ψ
        let target_col = target.matrix().column(j);
        let mut diff = actual.amplitudes().to_vec();
        let anc_dim = 1usize << n_anc;
        for (i, &t) in target_col.iter().enumerate() {
            if t == 0.0 {
                continue;
            }
            for (k, &a) in ancilla.amplitudes().iter().enumerate() {
                diff[i * anc_dim + k] -= t * a;
            }
        }
        columns.push(diff);
    }

    // Largest singular value via the small Gram matrix.
    let mut gram = DMatrix::zeros(data_dim, data_dim);
    for i in 0..data_dim {
        for j in i..data_dim {
            let dot: f64 = columns[i]
                .iter()
                .zip(&columns[j])
                .map(|(a, b)| a * b)
                .sum();
            gram[(i, j)] = dot;
            gram[(j, i)] = dot;
        }
    }
    let lambda_max = crate::linalg::max_eigenvalue(gram);
    Ok(lambda_max.max(0.0).sqrt())
}
