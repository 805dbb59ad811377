//! Symmetric eigensolver used across the crate.
//!
//! Cyclic Jacobi rotations. Dimensions here stay small (at most a few
//! hundred), where Jacobi is both fast enough and more accurate on clustered
//! or degenerate spectra than shifted-QL implementations.

use nalgebra::{DMatrix, DVector};

/// Eigenvalues and orthonormal eigenvectors of a symmetric matrix.
/// Returns `(values, vectors)` with `vectors.column(i)` belonging to
/// `values[i]`; no ordering is imposed.
pub(crate) fn symmetric_eigen(mut a: DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let n = a.nrows();
    debug_assert_eq!(n, a.ncols());
    let mut v = DMatrix::identity(n, n);
    let scale = a.amax().max(1e-300);

    for _sweep in 0..64 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].abs());
            }
        }
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    (a.diagonal(), v)
}

/// Largest eigenvalue of a symmetric positive-semidefinite matrix.
pub(crate) fn max_eigenvalue(a: DMatrix<f64>) -> f64 {
    let (values, _) = symmetric_eigen(a);
    values.iter().fold(0.0f64, |acc, &l| acc.max(l))
}
