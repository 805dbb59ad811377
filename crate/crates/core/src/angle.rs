//! Rotation angles with canonicalization and exact-multiple classification.
//!
//! An [`Angle`] is always stored canonically in `[0, 2π)`. Angles built from
//! an explicit `p·π/q` fraction remember it, so classification against the
//! excluded sets (multiples of π/2, π/4) can be decided exactly instead of
//! through the floating-point tolerance.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

/// Tolerance for classifying an angle as a multiple of π/2 or π/4.
pub const ANGLE_TOL: f64 = 1e-9;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A real angle in radians, canonical in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Angle {
    radians: f64,
    /// Present when the angle was constructed as an exact fraction `p·π/q`,
    /// reduced to lowest terms with `q > 0`.
    pi_fraction: Option<(i64, i64)>,
}

impl Angle {
    /// Canonicalizes an arbitrary radian value into `[0, 2π)`.
    pub fn from_radians(radians: f64) -> Self {
        assert!(radians.is_finite(), "angle must be finite");
        let mut r = radians.rem_euclid(TAU);
        // rem_euclid can return TAU when the input is a tiny negative number.
        if r >= TAU {
            r = 0.0;
        }
        Angle {
            radians: r,
            pi_fraction: None,
        }
    }

    /// Builds the exact angle `p·π/q`. Exactness is kept through
    /// canonicalization, halving, and classification.
    ///
    /// Numerator and denominator are limited to 10⁹ in magnitude so the
    /// classification arithmetic cannot overflow.
    pub fn pi_fraction(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        assert!(
            p.abs() <= 1_000_000_000 && q.abs() <= 1_000_000_000,
            "pi fraction out of range"
        );
        let (mut p, mut q) = if q < 0 { (-p, -q) } else { (p, q) };
        // canonical representative of p/q modulo 2: p in [0, 2q)
        p = p.rem_euclid(2 * q);
        let g = gcd(p, q).max(1);
        p /= g;
        q /= g;
        Angle {
            radians: (p as f64) * PI / (q as f64),
            pi_fraction: Some((p, q)),
        }
    }

    pub fn radians(&self) -> f64 {
        self.radians
    }

    /// The exact `p·π/q` representation, when one is known.
    pub fn as_pi_fraction(&self) -> Option<(i64, i64)> {
        self.pi_fraction
    }

    /// Half of this angle; exactness is preserved.
    pub fn half(&self) -> Angle {
        match self.pi_fraction {
            Some((p, q)) => Angle::pi_fraction(p, 2 * q),
            None => Angle::from_radians(self.radians / 2.0),
        }
    }

    pub fn negated(&self) -> Angle {
        match self.pi_fraction {
            Some((p, q)) => Angle::pi_fraction(-p, q),
            None => Angle::from_radians(-self.radians),
        }
    }

    /// Distance to the nearest integer multiple of `step` radians.
    fn distance_to_multiple_of(&self, step: f64) -> f64 {
        let ratio = self.radians / step;
        (ratio - ratio.round()).abs() * step
    }

    /// True iff the angle is an integer multiple of π/2, exactly for
    /// fraction-built angles and within [`ANGLE_TOL`] otherwise.
    pub fn is_multiple_of_half_pi(&self) -> bool {
        match self.pi_fraction {
            Some((p, q)) => (2 * p) % q == 0,
            None => self.distance_to_multiple_of(PI / 2.0) <= ANGLE_TOL,
        }
    }

    /// True iff the angle is an integer multiple of π/4 (same exactness rule).
    pub fn is_multiple_of_quarter_pi(&self) -> bool {
        match self.pi_fraction {
            Some((p, q)) => (4 * p) % q == 0,
            None => self.distance_to_multiple_of(PI / 4.0) <= ANGLE_TOL,
        }
    }

    pub fn cos(&self) -> f64 {
        self.radians.cos()
    }

    pub fn sin(&self) -> f64 {
        self.radians.sin()
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.pi_fraction {
            Some((p, 1)) => write!(f, "{p}*pi"),
            Some((p, q)) => write!(f, "{p}*pi/{q}"),
            None => write!(f, "{}", self.radians),
        }
    }
}
