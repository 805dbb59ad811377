//! Rotation-plane decomposition of real orthogonal operators.
//!
//! A real orthogonal matrix splits into a +1 eigenspace, a −1 eigenspace, and
//! two-dimensional invariant planes on which it rotates by some angle in
//! (0, π). The split is recovered from the symmetric part `S = (A + Aᵀ)/2`:
//! `A` commutes with `S`, and on the eigenspace of `S` for eigenvalue
//! `c ∈ (−1, 1)` it acts as a direct sum of rotations by `arccos c`. This is
//! the block structure of the real Schur form, computed through a symmetric
//! eigenproblem instead of QR iteration because the input is orthogonal.

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::operator::RealOperator;

/// Orthogonality tolerance required of inputs.
pub const SPECTRUM_INPUT_TOL: f64 = 1e-8;

/// Eigenvalue clusters closer than this (on the cosine scale) are merged.
pub const SPECTRUM_GAP: f64 = 1e-6;

#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("operator is not orthogonal: defect {defect} exceeds {tol}")]
    NotOrthogonal { defect: f64, tol: f64 },
}

/// One invariant plane with its rotation angle in (0, π).
#[derive(Debug, Clone)]
pub struct RotationPlane {
    pub angle: f64,
    pub basis: (DVector<f64>, DVector<f64>),
}

/// Eigenstructure of a real orthogonal operator.
#[derive(Debug, Clone)]
pub struct EigenSummary {
    pub dim: usize,
    pub plus_one_multiplicity: usize,
    pub minus_one_multiplicity: usize,
    pub rotations: Vec<RotationPlane>,
    pub plus_basis: Vec<DVector<f64>>,
    pub minus_basis: Vec<DVector<f64>>,
}

impl EigenSummary {
    /// Distinct rotation angles with their plane counts, merged at [`SPECTRUM_GAP`].
    pub fn rotation_angles(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for p in &self.rotations {
            match out.last_mut() {
                Some((a, count)) if (p.angle - *a).abs() <= SPECTRUM_GAP => *count += 1,
                _ => out.push((p.angle, 1)),
            }
        }
        out
    }

    /// Reassembles the operator from its blocks.
    pub fn reconstruct(&self) -> RealOperator {
        let d = self.dim;
        let mut m = DMatrix::zeros(d, d);
        for u in &self.plus_basis {
            m += u * u.transpose();
        }
        for u in &self.minus_basis {
            m -= u * u.transpose();
        }
        for p in &self.rotations {
            let (u, v) = &p.basis;
            let (c, s) = (p.angle.cos(), p.angle.sin());
            m += c * (u * u.transpose() + v * v.transpose());
            m += s * (v * u.transpose() - u * v.transpose());
        }
        RealOperator::from_matrix(m).expect("reconstruction preserves dimension")
    }
}

/// Decomposes an orthogonal operator into ±1 eigenspaces and rotation planes.
pub fn rotation_spectrum(op: &RealOperator) -> Result<EigenSummary, SpectrumError> {
    let defect = op.orthogonality_defect();
    if defect > SPECTRUM_INPUT_TOL {
        return Err(SpectrumError::NotOrthogonal {
            defect,
            tol: SPECTRUM_INPUT_TOL,
        });
    }
    let a = op.matrix();
    let d = a.nrows();
    let sym = (a + a.transpose()) * 0.5;
    let (eigenvalues, eigenvectors) = crate::linalg::symmetric_eigen(sym);

    // Sort eigenpairs by descending cosine and cluster at the gap tolerance.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        eigenvalues[j]
            .partial_cmp(&eigenvalues[i])
            .expect("finite eigenvalues")
    });

    let mut summary = EigenSummary {
        dim: d,
        plus_one_multiplicity: 0,
        minus_one_multiplicity: 0,
        rotations: Vec::new(),
        plus_basis: Vec::new(),
        minus_basis: Vec::new(),
    };

    let mut idx = 0;
    while idx < d {
        let c0 = eigenvalues[order[idx]];
        let mut members = vec![order[idx]];
        idx += 1;
        while idx < d && (eigenvalues[order[idx]] - c0).abs() <= SPECTRUM_GAP {
            members.push(order[idx]);
            idx += 1;
        }
        let c_mean = members.iter().map(|&i| eigenvalues[i]).sum::<f64>() / members.len() as f64;
        let c_clamped = c_mean.clamp(-1.0, 1.0);
        let angle = c_clamped.acos();

        let basis: Vec<DVector<f64>> = members
            .iter()
            .map(|&i| eigenvectors.column(i).into_owned())
            .collect();

        if angle <= SPECTRUM_GAP {
            summary.plus_one_multiplicity += basis.len();
            summary.plus_basis.extend(basis);
        } else if std::f64::consts::PI - angle <= SPECTRUM_GAP {
            summary.minus_one_multiplicity += basis.len();
            summary.minus_basis.extend(basis);
        } else {
            extract_planes(a, basis, &mut summary);
        }
    }

    summary
        .rotations
        .sort_by(|p, q| p.angle.partial_cmp(&q.angle).expect("finite angles"));
    Ok(summary)
}

/// Splits the eigenspace of the symmetric part (eigenvalue strictly inside
/// (−1, 1)) into invariant rotation planes of `a`.
fn extract_planes(a: &DMatrix<f64>, mut basis: Vec<DVector<f64>>, out: &mut EigenSummary) {
    let mut used: Vec<DVector<f64>> = Vec::new();
    while let Some(candidate) = basis.pop() {
        let Some(u) = deflate(candidate, &used) else {
            continue;
        };
        let au = a * &u;
        let cos = u.dot(&au);
        let mut v = &au - cos * &u;
        let s = v.norm();
        if s <= 1e-9 {
            // Degenerate direction: a true ±1 eigenvector that leaked into
            // the cluster. Classify by the sign of ⟨u, Au⟩.
            if cos >= 0.0 {
                out.plus_one_multiplicity += 1;
                out.plus_basis.push(u.clone());
            } else {
                out.minus_one_multiplicity += 1;
                out.minus_basis.push(u.clone());
            }
            used.push(u);
            continue;
        }
        v /= s;
        let angle = s.atan2(cos);
        used.push(u.clone());
        used.push(v.clone());
        out.rotations.push(RotationPlane {
            angle,
            basis: (u, v),
        });
    }
}

/// Projects a candidate away from already-extracted directions and
/// normalizes; returns `None` when nothing independent remains.
fn deflate(mut u: DVector<f64>, used: &[DVector<f64>]) -> Option<DVector<f64>> {
    for w in used {
        let c = w.dot(&u);
        u -= c * w;
    }
    let n = u.norm();
    if n < 1e-6 {
        None
    } else {
        Some(u / n)
    }
}
