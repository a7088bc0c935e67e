//! Distance values: exact rationals, float approximations (non-integer p)
//! and infinity, under one total order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Relative tolerance used when comparing approximate scores.
pub const APPROX_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug)]
pub enum Score {
    Exact(Ratio<i64>),
    Approx(f64),
    Infinite,
}

impl Score {
    pub fn zero() -> Self {
        Score::Exact(Ratio::zero())
    }

    pub fn int(x: i64) -> Self {
        Score::Exact(Ratio::from_integer(x))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Score::Exact(Ratio::new(num, den))
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Score::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Score::Exact(r) => r.is_zero(),
            Score::Approx(x) => *x == 0.0,
            Score::Infinite => false,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Score::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Score::Approx(x) => *x,
            Score::Infinite => f64::INFINITY,
        }
    }

    pub fn as_exact(&self) -> Option<Ratio<i64>> {
        match self {
            Score::Exact(r) => Some(*r),
            _ => None,
        }
    }

    pub fn add(&self, other: &Score) -> Score {
        match (self, other) {
            (Score::Infinite, _) | (_, Score::Infinite) => Score::Infinite,
            (Score::Exact(a), Score::Exact(b)) => Score::Exact(a + b),
            (a, b) => Score::Approx(a.as_f64() + b.as_f64()),
        }
    }

    pub fn max(self, other: Score) -> Score {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Score) -> Score {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Divides by a positive integer.
    pub fn div_int(&self, k: i64) -> Score {
        match self {
            Score::Exact(r) => Score::Exact(r / k),
            Score::Approx(x) => Score::Approx(x / k as f64),
            Score::Infinite => Score::Infinite,
        }
    }

    /// Equality up to the approximation tolerance when either side is approximate.
    pub fn ties_with(&self, other: &Score) -> bool {
        match (self, other) {
            (Score::Infinite, Score::Infinite) => true,
            (Score::Infinite, _) | (_, Score::Infinite) => false,
            (Score::Exact(a), Score::Exact(b)) => a == b,
            (a, b) => {
                let (x, y) = (a.as_f64(), b.as_f64());
                (x - y).abs() <= APPROX_TOLERANCE * x.abs().max(y.abs()).max(1.0)
            }
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Score::Infinite => 1,
            _ => 0,
        }
    }
}

impl PartialEq for Score {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Score {}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Score::Exact(a), Score::Exact(b)) => a.cmp(b),
            (Score::Infinite, Score::Infinite) => Ordering::Equal,
            (a, b) if a.rank() != b.rank() => a.rank().cmp(&b.rank()),
            (a, b) => a.as_f64().total_cmp(&b.as_f64()),
        }
    }
}

impl From<i64> for Score {
    fn from(x: i64) -> Self {
        Score::int(x)
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Score::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Score::Approx(x) => write!(f, "~{x}"),
            Score::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Score {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Score::Infinite);
        }
        if let Some(rest) = s.strip_prefix('~') {
            return rest.parse::<f64>().map(Score::Approx).map_err(|e| e.to_string());
        }
        if let Some((a, b)) = s.split_once('/') {
            let a: i64 = a.parse().map_err(|e: std::num::ParseIntError| e.to_string())?;
            let b: i64 = b.parse().map_err(|e: std::num::ParseIntError| e.to_string())?;
            if b == 0 {
                return Err("zero denominator".into());
            }
            return Ok(Score::ratio(a, b));
        }
        s.parse::<i64>().map(Score::int).map_err(|e| e.to_string())
    }
}

impl Serialize for Score {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering() {
        assert!(Score::int(3) < Score::Infinite);
        assert!(Score::ratio(1, 2) < Score::Approx(0.6));
        assert!(Score::Approx(1e9) < Score::Infinite);
        assert_eq!(Score::ratio(2, 4), Score::ratio(1, 2));
    }

    #[test]
    fn display_roundtrip() {
        for s in [Score::int(7), Score::ratio(3, 2), Score::Infinite, Score::Approx(1.25)] {
            let back: Score = s.to_string().parse().unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn tolerance() {
        assert!(Score::Approx(1.0).ties_with(&Score::Approx(1.0 + 1e-12)));
        assert!(!Score::int(1).ties_with(&Score::int(2)));
    }
}
