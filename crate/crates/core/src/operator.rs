//! Dense real orthogonal operators and circuit materialization.

use nalgebra::DMatrix;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError};
use crate::state::{apply_circuit, StateVector};

/// Entrywise orthogonality tolerance for operators produced from circuits.
pub const ORTHOGONALITY_TOL: f64 = 1e-10;

/// Default cap on dense materialization and simulation-based verification.
pub const DEFAULT_MAX_QUBITS: usize = 12;

#[derive(Debug, Error, PartialEq)]
pub enum OperatorError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("dimension {dim} is not a power of two")]
    NotPowerOfTwo { dim: usize },
    #[error("operator dimensions {a} and {b} are incompatible")]
    DimensionMismatch { a: usize, b: usize },
}

/// A dense real matrix of power-of-two dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct RealOperator {
    m: DMatrix<f64>,
}

impl RealOperator {
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self, OperatorError> {
        let dim = m.nrows();
        if dim != m.ncols() || !dim.is_power_of_two() {
            return Err(OperatorError::NotPowerOfTwo { dim });
        }
        Ok(RealOperator { m })
    }

    pub fn identity(dim: usize) -> Result<Self, OperatorError> {
        RealOperator::from_matrix(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    /// Max-entry deviation of `OᵀO` from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = self.m.transpose() * &self.m;
        let mut worst: f64 = 0.0;
        for i in 0..g.nrows() {
            for j in 0..g.ncols() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - target).abs());
            }
        }
        worst
    }

    pub fn is_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }

    /// Spectral norm, via the eigenvalues of `AᵀA`.
    pub fn operator_norm(&self) -> f64 {
        let g = self.m.transpose() * &self.m;
        crate::linalg::max_eigenvalue(g).sqrt()
    }

    pub fn mul(&self, rhs: &RealOperator) -> Result<RealOperator, OperatorError> {
        if self.dim() != rhs.dim() {
            return Err(OperatorError::DimensionMismatch {
                a: self.dim(),
                b: rhs.dim(),
            });
        }
        Ok(RealOperator {
            m: &self.m * &rhs.m,
        })
    }

    pub fn transpose(&self) -> RealOperator {
        RealOperator {
            m: self.m.transpose(),
        }
    }

    /// Kronecker product; `self` takes the high-order qubits.
    pub fn kron(&self, rhs: &RealOperator) -> RealOperator {
        RealOperator {
            m: self.m.kronecker(&rhs.m),
        }
    }

    /// Distance to another operator in spectral norm.
    pub fn distance(&self, rhs: &RealOperator) -> Result<f64, OperatorError> {
        if self.dim() != rhs.dim() {
            return Err(OperatorError::DimensionMismatch {
                a: self.dim(),
                b: rhs.dim(),
            });
        }
        let diff = RealOperator {
            m: &self.m - &rhs.m,
        };
        Ok(diff.operator_norm())
    }

    /// Applies the operator to a statevector of matching size.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector, OperatorError> {
        if state.amplitudes().len() != self.dim() {
            return Err(OperatorError::DimensionMismatch {
                a: self.dim(),
                b: state.amplitudes().len(),
            });
        }
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        let out = &self.m * v;
        Ok(
            StateVector::from_amplitudes(state.n_qubits(), out.iter().copied().collect())
                .expect("orthogonal action preserves the norm"),
        )
    }
}

/// Materializes a circuit as a dense operator: column `j` is the image of
/// basis state `j` under the gate sequence.
pub fn circuit_unitary(circuit: &Circuit) -> Result<RealOperator, OperatorError> {
    circuit_unitary_capped(circuit, DEFAULT_MAX_QUBITS)
}

/// As [`circuit_unitary`] with an explicit qubit cap.
pub fn circuit_unitary_capped(circuit: &Circuit, cap: usize) -> Result<RealOperator, OperatorError> {
    let n = circuit.n_qubits();
    if n > cap {
        return Err(OperatorError::Circuit(CircuitError::DimensionCapExceeded {
            n_qubits: n,
            cap,
        }));
    }
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        let out = apply_circuit(&StateVector::basis_state(n, j), circuit)
            .map_err(|_| CircuitError::EmptyRegister)
            .expect("validated circuit applies cleanly");
        for (i, &a) in out.amplitudes().iter().enumerate() {
            m[(i, j)] = a;
        }
    }
    Ok(RealOperator { m })
}
