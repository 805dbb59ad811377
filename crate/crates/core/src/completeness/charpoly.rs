//! Exact irrationality certificates from integer matrix arithmetic.
//!
//! The Toffoli-case witness operator has entries that are integer multiples
//! of 1/8: it is `(K·P)²/8` where `K` is the ±1 Hadamard-cube pattern
//! (`√8·H⊗H⊗H`) and `P` the Toffoli permutation. Working with the integer
//! matrix `K·P` makes the trace exact. With +1-eigenvalue multiplicity 6, the
//! two remaining eigenvalues `λ±` sum to `trace − 6` exactly; they are roots
//! of `λ² − sλ + 1` with `s = trace − 6`. If that polynomial is not integral,
//! `λ±` are not algebraic integers, hence not roots of unity, hence the
//! rotation angle is incommensurate with π. No floating-point tolerance
//! enters the verdict.

use nalgebra::DMatrix;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::operator::RealOperator;

#[derive(Debug, Error, PartialEq)]
pub enum ExactnessError {
    #[error("entry ({row},{col}) = {value} times {denominator} is {offset:e} away from an integer")]
    NotExactlyRational {
        row: usize,
        col: usize,
        value: f64,
        denominator: i64,
        offset: f64,
    },
}

/// Exact eigenvalue-sum certificate for a small orthogonal operator whose
/// entries are integer multiples of `1/denominator`.
#[derive(Debug, Clone, Serialize)]
pub struct CharpolyCertificate {
    /// Exact trace as (numerator, denominator) in lowest terms.
    pub trace: (i64, i64),
    /// `s = trace − fixed_multiplicity`: the exact sum of the two non-unit
    /// eigenvalues.
    pub eigen_sum: (i64, i64),
    /// Coefficients `(1, −s, 1)` of the monic polynomial `λ² − sλ + 1`.
    pub polynomial: [(i64, i64); 3],
    /// True iff every coefficient is an integer. Non-integral coefficients
    /// certify that the eigenvalues are not algebraic integers.
    pub integral: bool,
    /// Multiplicity of eigenvalue 1 assumed when forming `eigen_sum`.
    pub fixed_multiplicity: i64,
}

impl CharpolyCertificate {
    /// True iff the certificate proves the rotation angle irrational over π:
    /// a non-integral minimal polynomial excludes roots of unity.
    pub fn proves_incommensurate(&self) -> bool {
        !self.integral
    }
}

fn ratio_pair(r: Ratio<i64>) -> (i64, i64) {
    (*r.numer(), *r.denom())
}

fn certificate(trace: Ratio<i64>, fixed_multiplicity: i64) -> CharpolyCertificate {
    let s = trace - Ratio::from_integer(fixed_multiplicity);
    let one = Ratio::from_integer(1);
    let integral = s.is_integer();
    CharpolyCertificate {
        trace: ratio_pair(trace),
        eigen_sum: ratio_pair(s),
        polynomial: [ratio_pair(one), ratio_pair(-s), ratio_pair(one)],
        integral,
        fixed_multiplicity,
    }
}

/// The ±1 matrix `2^{n/2}·H^{⊗n}`: entry `(i, j)` is `(−1)^{popcount(i∧j)}`.
fn hadamard_sign_matrix(n: usize) -> DMatrix<i64> {
    let d = 1usize << n;
    DMatrix::from_fn(d, d, |i, j| {
        if (i & j).count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    })
}

/// Permutation matrix of the Toffoli gate on 3 qubits (qubit 0 = MSB).
fn toffoli_permutation() -> DMatrix<i64> {
    let mut m = DMatrix::zeros(8, 8);
    for i in 0..8usize {
        let j = if i & 0b110 == 0b110 { i ^ 1 } else { i };
        m[(j, i)] = 1;
    }
    m
}

/// CNOT permutation on 2 qubits, control on the high qubit.
fn cnot_permutation() -> DMatrix<i64> {
    let mut m = DMatrix::zeros(4, 4);
    for i in 0..4usize {
        let j = if i & 0b10 != 0 { i ^ 1 } else { i };
        m[(j, i)] = 1;
    }
    m
}

/// Exact certificate for the Toffoli-case operator `(H⊗H⊗H·Toffoli)²`.
///
/// Its trace is 9/2, so the eigenvalue sum is −3/2 and the polynomial
/// `λ² + (3/2)λ + 1` is non-integral: the certificate proves the rotation
/// angle incommensurate with π.
pub fn toffoli_case_certificate() -> CharpolyCertificate {
    let a = hadamard_sign_matrix(3) * toffoli_permutation();
    let sq = &a * &a; // entries of the operator, times 8
    let trace = Ratio::new(sq.trace(), 8);
    certificate(trace, 6)
}

/// Exact certificate for the 4×4 analogue `(H⊗H·CNOT)²`, computed the same
/// way with fixed multiplicity 2. Reported for contrast: its eigenvalue sum
/// is the integer −1 (the rotation angle is the rational 2π/3), so it proves
/// nothing — consistent with Hadamard being the excluded partner for CNOT.
pub fn cnot_analogue_certificate() -> CharpolyCertificate {
    let a = hadamard_sign_matrix(2) * cnot_permutation();
    let sq = &a * &a; // entries times 4
    let trace = Ratio::new(sq.trace(), 4);
    certificate(trace, 2)
}

/// Builds a certificate from a numeric operator by rationalizing every entry
/// against the claimed denominator. Rejects inputs that are not exactly
/// rational (beyond 1e-12), so perturbed operators cannot masquerade as
/// exact certificates.
pub fn certificate_from_numeric(
    op: &RealOperator,
    denominator: i64,
    fixed_multiplicity: i64,
) -> Result<CharpolyCertificate, ExactnessError> {
    let m = op.matrix();
    let mut trace = Ratio::from_integer(0);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let scaled = m[(i, j)] * denominator as f64;
            let offset = (scaled - scaled.round()).abs();
            if offset > 1e-12 {
                return Err(ExactnessError::NotExactlyRational {
                    row: i,
                    col: j,
                    value: m[(i, j)],
                    denominator,
                    offset,
                });
            }
            if i == j {
                trace += Ratio::new(scaled.round() as i64, denominator);
            }
        }
    }
    Ok(certificate(trace, fixed_multiplicity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completeness::operators::build_toffoli_case_operator;

    #[test]
    fn toffoli_certificate_is_exact_and_non_integral() {
        let c = toffoli_case_certificate();
        assert_eq!(c.trace, (9, 2));
        assert_eq!(c.eigen_sum, (-3, 2));
        assert_eq!(c.polynomial, [(1, 1), (3, 2), (1, 1)]);
        assert!(!c.integral);
        assert!(c.proves_incommensurate());
    }

    #[test]
    fn symbolic_matches_simulated_operator() {
        // ties the integer construction to the simulator route
        let a = hadamard_sign_matrix(3) * toffoli_permutation();
        let sq = &a * &a;
        let sim = build_toffoli_case_operator();
        for i in 0..8 {
            for j in 0..8 {
                let exact = sq[(i, j)] as f64 / 8.0;
                assert!((sim.matrix()[(i, j)] - exact).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn cnot_analogue_is_integral() {
        let c = cnot_analogue_certificate();
        assert_eq!(c.trace, (1, 1));
        assert_eq!(c.eigen_sum, (-1, 1));
        assert!(c.integral);
        assert!(!c.proves_incommensurate());
    }

    #[test]
    fn numeric_route_agrees() {
        let c = certificate_from_numeric(&build_toffoli_case_operator(), 8, 6).unwrap();
        assert_eq!(c.trace, (9, 2));
        assert!(!c.integral);
    }

    #[test]
    fn perturbed_operator_is_rejected() {
        let mut m = build_toffoli_case_operator().matrix().clone();
        m[(0, 0)] += 1e-3;
        let op = RealOperator::from_matrix(m).unwrap();
        assert!(matches!(
            certificate_from_numeric(&op, 8, 6),
            Err(ExactnessError::NotExactlyRational { .. })
        ));
    }
}
