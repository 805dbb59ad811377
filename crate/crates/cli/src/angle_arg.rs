//! Angle argument parsing.
//!
//! Accepts plain radians (`0.5235`), or exact pi fractions: `pi`, `-pi`,
//! `pi/6`, `3*pi/4`, `2pi`. Exact forms keep exactness, so excluded-set
//! checks (multiples of π/2, π/4) are decided without tolerance.

use gatesmith_core::angle::Angle;

pub fn parse_angle(s: &str) -> Result<Angle, String> {
    let t = s.trim().replace(' ', "");
    if let Some((p, q)) = parse_pi_fraction(&t) {
        if q == 0 {
            return Err(format!("zero denominator in angle {s:?}"));
        }
        if p.abs() > 1_000_000_000 || q.abs() > 1_000_000_000 {
            return Err(format!("pi fraction {s:?} out of range (|p|, |q| <= 1e9)"));
        }
        return Ok(Angle::pi_fraction(p, q));
    }
    t.parse::<f64>()
        .map(Angle::from_radians)
        .map_err(|_| format!("cannot parse angle {s:?}: expected radians or p*pi/q"))
}

fn parse_pi_fraction(t: &str) -> Option<(i64, i64)> {
    let idx = t.find("pi")?;
    let (head, rest) = t.split_at(idx);
    let tail = &rest[2..];

    let p: i64 = match head.trim_end_matches('*') {
        "" | "+" => 1,
        "-" => -1,
        num => num.parse().ok()?,
    };
    let q: i64 = match tail.strip_prefix('/') {
        None if tail.is_empty() => 1,
        None => return None,
        Some(d) => d.parse().ok()?,
    };
    Some((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_forms() {
        assert_eq!(parse_angle("pi/6").unwrap().as_pi_fraction(), Some((1, 6)));
        assert_eq!(parse_angle("3*pi/4").unwrap().as_pi_fraction(), Some((3, 4)));
        assert_eq!(parse_angle("pi").unwrap().as_pi_fraction(), Some((1, 1)));
        assert_eq!(parse_angle("2pi").unwrap().as_pi_fraction(), Some((0, 1)));
        // -pi/2 canonicalizes to 3pi/2
        assert_eq!(parse_angle("-pi/2").unwrap().as_pi_fraction(), Some((3, 2)));
        assert!(parse_angle("pi/2").unwrap().is_multiple_of_half_pi());
    }

    #[test]
    fn radians_form() {
        let a = parse_angle("0.7").unwrap();
        assert!((a.radians() - 0.7).abs() < 1e-15);
        assert_eq!(a.as_pi_fraction(), None);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_angle("pie").is_err());
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("").is_err());
    }
}
