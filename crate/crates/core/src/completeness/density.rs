//! Finite density probes: how well do short generator words cover the
//! special orthogonal group?
//!
//! Words are enumerated breadth-first by left multiplication, deduplicated
//! geometrically, and compared against Haar-random special-orthogonal
//! targets. This is empirical evidence of coverage, not a proof.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

use crate::operator::RealOperator;

/// Words closer than this (Frobenius) to a kept word are discarded.
const DEDUP_TOL: f64 = 1e-6;

/// Quantization cell for the dedup grid hash.
const GRID_RESOLUTION: f64 = 1e-3;

#[derive(Debug, Error, PartialEq)]
pub enum DensityError {
    #[error("no generators supplied")]
    NoGenerators,
    #[error("generator dimensions differ: {a} vs {b}")]
    DimensionMismatch { a: usize, b: usize },
    #[error("dimension {dim} exceeds the probe cap of 8")]
    DimensionTooLarge { dim: usize },
    #[error("word length {len} exceeds the probe cap of 12")]
    WordLengthTooLarge { len: usize },
    #[error("generator {index} is not orthogonal (defect {defect})")]
    NotOrthogonal { index: usize, defect: f64 },
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DensityProbeConfig {
    pub max_word_len: usize,
    pub n_targets: usize,
    pub seed: u64,
}

/// Coverage statistics for all words up to one length.
#[derive(Debug, Clone, Serialize)]
pub struct CoverageRow {
    pub word_len: usize,
    pub words_kept: usize,
    /// Min / median / max over targets of the distance (spectral norm) from
    /// the target to its nearest kept word.
    pub min_distance: f64,
    pub median_distance: f64,
    pub max_distance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub dim: usize,
    pub n_targets: usize,
    pub seed: u64,
    pub rows: Vec<CoverageRow>,
}

struct DedupSet {
    buckets: HashMap<Vec<i64>, Vec<usize>>,
    kept: Vec<DMatrix<f64>>,
}

impl DedupSet {
    fn new() -> Self {
        DedupSet {
            buckets: HashMap::new(),
            kept: Vec::new(),
        }
    }

    fn key(m: &DMatrix<f64>) -> Vec<i64> {
        m.iter().map(|&x| (x / GRID_RESOLUTION).round() as i64).collect()
    }

    /// Inserts unless an existing word in the same grid cell is within
    /// [`DEDUP_TOL`]; returns whether the word was kept.
    fn insert(&mut self, m: DMatrix<f64>) -> bool {
        let key = Self::key(&m);
        if let Some(bucket) = self.buckets.get(&key) {
            for &idx in bucket {
                if (&self.kept[idx] - &m).norm() < DEDUP_TOL {
                    return false;
                }
            }
        }
        let idx = self.kept.len();
        self.kept.push(m);
        self.buckets.entry(key).or_default().push(idx);
        true
    }
}

fn spectral_distance(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    let diff = a - b;
    let gram = diff.transpose() * &diff;
    crate::linalg::max_eigenvalue(gram).max(0.0).sqrt()
}

/// Haar-distributed special orthogonal matrix (QR of a Gaussian sample with
/// the R-diagonal sign fix, determinant corrected to +1).
fn haar_special_orthogonal(dim: usize, rng: &mut ChaCha20Rng) -> DMatrix<f64> {
    // Box–Muller keeps the dependency surface small.
    let mut gauss = || {
        let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    };
    let g = DMatrix::from_fn(dim, dim, |_, _| gauss());
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            for i in 0..dim {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    if q.determinant() < 0.0 {
        for i in 0..dim {
            q[(i, 0)] = -q[(i, 0)];
        }
    }
    q
}

/// Enumerates generator words up to `max_word_len` and reports per-length
/// coverage of Haar-random targets. Deterministic for a fixed seed.
pub fn density_probe(
    generators: &[RealOperator],
    config: &DensityProbeConfig,
) -> Result<CoverageReport, DensityError> {
    if generators.is_empty() {
        return Err(DensityError::NoGenerators);
    }
    let dim = generators[0].dim();
    for g in generators.iter().skip(1) {
        if g.dim() != dim {
            return Err(DensityError::DimensionMismatch {
                a: dim,
                b: g.dim(),
            });
        }
    }
    if dim > 8 {
        return Err(DensityError::DimensionTooLarge { dim });
    }
    if config.max_word_len > 12 {
        return Err(DensityError::WordLengthTooLarge {
            len: config.max_word_len,
        });
    }
    for (index, g) in generators.iter().enumerate() {
        let defect = g.orthogonality_defect();
        if defect > 1e-8 {
            return Err(DensityError::NotOrthogonal { index, defect });
        }
    }

    let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
    let targets: Vec<DMatrix<f64>> = (0..config.n_targets)
        .map(|_| haar_special_orthogonal(dim, &mut rng))
        .collect();

    let mut set = DedupSet::new();
    set.insert(DMatrix::identity(dim, dim));
    let mut frontier: Vec<DMatrix<f64>> = vec![DMatrix::identity(dim, dim)];
    // nearest-word distance per target, updated as words accumulate
    let mut nearest: Vec<f64> = targets
        .iter()
        .map(|t| spectral_distance(t, &set.kept[0]))
        .collect();

    let mut rows = Vec::with_capacity(config.max_word_len);
    for word_len in 1..=config.max_word_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in generators {
                let candidate = g.matrix() * w;
                if set.insert(candidate.clone()) {
                    for (d, t) in nearest.iter_mut().zip(&targets) {
                        *d = d.min(spectral_distance(t, &candidate));
                    }
                    next.push(candidate);
                }
            }
        }
        frontier = next;

        let mut sorted = nearest.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
        let median = if sorted.is_empty() {
            0.0
        } else {
            sorted[sorted.len() / 2]
        };
        rows.push(CoverageRow {
            word_len,
            words_kept: set.kept.len(),
            min_distance: sorted.first().copied().unwrap_or(0.0),
            median_distance: median,
            max_distance: sorted.last().copied().unwrap_or(0.0),
        });
    }

    Ok(CoverageReport {
        dim,
        n_targets: config.n_targets,
        seed: config.seed,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation(angle: f64) -> RealOperator {
        RealOperator::from_matrix(nalgebra::dmatrix![
            angle.cos(), -angle.sin();
            angle.sin(), angle.cos()
        ])
        .unwrap()
    }

    #[test]
    fn identity_generator_distance_is_to_identity() {
        let id = RealOperator::identity(2).unwrap();
        let cfg = DensityProbeConfig {
            max_word_len: 3,
            n_targets: 5,
            seed: 7,
        };
        let report = density_probe(std::slice::from_ref(&id), &cfg).unwrap();
        assert_eq!(report.rows.last().unwrap().words_kept, 1);
        // distances equal distance to the identity, so constant across lengths
        assert_eq!(
            report.rows[0].median_distance,
            report.rows[2].median_distance
        );
    }

    #[test]
    fn golden_rotation_coverage_improves() {
        let theta = std::f64::consts::PI * (5.0f64.sqrt() - 1.0);
        let cfg = DensityProbeConfig {
            max_word_len: 12,
            n_targets: 32,
            seed: 1,
        };
        let report = density_probe(&[rotation(theta)], &cfg).unwrap();
        let first = &report.rows[0];
        let last = report.rows.last().unwrap();
        assert!(last.median_distance < first.median_distance);
        for w in report.rows.windows(2) {
            assert!(w[1].min_distance <= w[0].min_distance + 1e-15);
            assert!(w[1].median_distance <= w[0].median_distance + 1e-15);
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let cfg = DensityProbeConfig {
            max_word_len: 4,
            n_targets: 8,
            seed: 99,
        };
        let g = rotation(1.0);
        let a = density_probe(std::slice::from_ref(&g), &cfg).unwrap();
        let b = density_probe(&[g], &cfg).unwrap();
        assert_eq!(a.rows[3].median_distance, b.rows[3].median_distance);
    }

    #[test]
    fn input_validation() {
        let cfg = DensityProbeConfig {
            max_word_len: 2,
            n_targets: 2,
            seed: 0,
        };
        assert_eq!(
            density_probe(&[], &cfg).unwrap_err(),
            DensityError::NoGenerators
        );
        let bad = RealOperator::from_matrix(nalgebra::dmatrix![1.0, 0.5; 0.0, 1.0]).unwrap();
        assert!(matches!(
            density_probe(&[bad], &cfg).unwrap_err(),
            DensityError::NotOrthogonal { .. }
        ));
        let a = RealOperator::identity(2).unwrap();
        let b = RealOperator::identity(4).unwrap();
        assert!(matches!(
            density_probe(&[a, b], &cfg).unwrap_err(),
            DensityError::DimensionMismatch { .. }
        ));
    }
}
