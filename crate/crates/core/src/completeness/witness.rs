//! Heuristic irrationality witnesses via continued fractions.
//!
//! A finite continued-fraction scan cannot prove irrationality; it reports
//! the best convergent below a denominator cap. A value is flagged rational
//! only when some convergent reproduces it to within [`WITNESS_RESIDUAL_TOL`].

use serde::Serialize;
use thiserror::Error;

/// Residual below which a convergent is accepted as an exact rational hit.
pub const WITNESS_RESIDUAL_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum WitnessError {
    #[error("input {0} is not finite")]
    NonFinite(f64),
    #[error("denominator cap must be at least 1, got {0}")]
    BadCap(i64),
}

/// Best rational approximation evidence for a real number.
#[derive(Debug, Clone, Serialize)]
pub struct IrrationalityWitness {
    pub value_over_pi: f64,
    /// Present iff some convergent with `q ≤ q_max` matches to within
    /// [`WITNESS_RESIDUAL_TOL`]; `(p, q)` is in lowest terms.
    pub best_rational: Option<(i64, i64)>,
    /// Residual `|x − p/q|` of the best convergent under the cap.
    pub residual: f64,
    pub q_max: i64,
}

/// Scans the continued-fraction convergents of `x` with denominators up to
/// `q_max` and reports the best one.
pub fn rational_witness(x: f64, q_max: i64) -> Result<IrrationalityWitness, WitnessError> {
    if !x.is_finite() {
        return Err(WitnessError::NonFinite(x));
    }
    if q_max < 1 {
        return Err(WitnessError::BadCap(q_max));
    }

    let (mut p0, mut q0, mut p1, mut q1): (i64, i64, i64, i64) = (1, 0, x.floor() as i64, 1);
    let mut best = (p1, q1, (x - p1 as f64).abs());
    let mut frac = x - x.floor();

    for _ in 0..64 {
        if frac < 1e-18 {
            break;
        }
        let y = 1.0 / frac;
        let a = y.floor();
        if a >= i64::MAX as f64 / 2.0 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = match (
            a.checked_mul(p1).and_then(|v| v.checked_add(p0)),
            a.checked_mul(q1).and_then(|v| v.checked_add(q0)),
        ) {
            (Some(p2), Some(q2)) => (p2, q2),
            _ => break,
        };
        if q2 > q_max {
            break;
        }
        let residual = (x - p2 as f64 / q2 as f64).abs();
        if residual < best.2 {
            best = (p2, q2, residual);
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        frac = y - a as f64;
    }

    let (p, q, residual) = best;
    Ok(IrrationalityWitness {
        value_over_pi: x,
        best_rational: (residual < WITNESS_RESIDUAL_TOL).then_some((p, q)),
        residual,
        q_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_rational_is_found() {
        let w = rational_witness(2.0 / 3.0, 1_000_000).unwrap();
        assert_eq!(w.best_rational, Some((2, 3)));
        assert!(w.residual < 1e-15);
    }

    #[test]
    fn cap_semantics() {
        // q = 2 exceeds a cap of 1, so 0.5 has no admissible rational.
        let w = rational_witness(0.5, 1).unwrap();
        assert_eq!(w.best_rational, None);
    }

    #[test]
    fn toffoli_case_angle_over_pi_has_no_witness() {
        let x = (std::f64::consts::PI - 0.75f64.acos()) / std::f64::consts::PI;
        let w = rational_witness(x, 1_000_000).unwrap();
        assert_eq!(w.best_rational, None);
        // best convergent under the cap is 108313/140676 at ~6.2e-12
        assert!(w.residual > WITNESS_RESIDUAL_TOL);
        assert!(w.residual < 1e-11);
    }

    #[test]
    fn non_finite_rejected() {
        assert!(rational_witness(f64::NAN, 10).is_err());
        assert_eq!(rational_witness(1.0, 0).unwrap_err(), WitnessError::BadCap(0));
    }

    #[test]
    fn negative_values_handled() {
        let w = rational_witness(-0.75, 100).unwrap();
        assert_eq!(w.best_rational, Some((-3, 4)));
    }
}
