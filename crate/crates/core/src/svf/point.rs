use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Two real breakpoints closer than this are treated as equal, and a piece
/// overlapping a set by at most this much contributes nothing.
pub const ENDPOINT_TOL: f64 = 1e-12;

/// A point of `[0, 1]`, exact when it came from index data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Exact(Rational64),
    Real(f64),
}

impl Point {
    pub fn zero() -> Self {
        Point::Exact(Rational64::from_integer(0))
    }

    pub fn one() -> Self {
        Point::Exact(Rational64::from_integer(1))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Point::Exact(Rational64::new(p, q))
    }

    pub fn value(self) -> f64 {
        match self {
            Point::Exact(r) => rational_to_f64(r),
            Point::Real(x) => x,
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Point::Exact(_))
    }

    /// `self - other`, exact when both are exact.
    pub fn minus(self, other: Point) -> Length {
        match (self, other) {
            (Point::Exact(a), Point::Exact(b)) => Length::Exact(a - b),
            _ => Length::Real(self.value() - other.value()),
        }
    }

    pub fn cmp_exact(self, other: Point) -> Ordering {
        match (self, other) {
            (Point::Exact(a), Point::Exact(b)) => a.cmp(&b),
            _ => self.value().total_cmp(&other.value()),
        }
    }

    pub fn min(self, other: Point) -> Point {
        if self.cmp_exact(other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Point) -> Point {
        if self.cmp_exact(other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl From<Rational64> for Point {
    fn from(r: Rational64) -> Self {
        Point::Exact(r)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Exact(r) => write!(f, "{r}"),
            Point::Real(x) => write!(f, "{x}"),
        }
    }
}

/// A signed length; `Real` lengths within [`ENDPOINT_TOL`] of zero count as zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Length {
    Exact(Rational64),
    Real(f64),
}

impl Length {
    pub fn is_positive(self) -> bool {
        match self {
            Length::Exact(r) => r > Rational64::from_integer(0),
            Length::Real(x) => x > ENDPOINT_TOL,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Length::Exact(r) => rational_to_f64(r),
            Length::Real(x) => x,
        }
    }
}

pub(crate) fn rational_to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Point::Exact(r) => s.serialize_str(&r.to_string()),
            Point::Real(x) => s.serialize_f64(*x),
        }
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct PointVisitor;
        impl Visitor<'_> for PointVisitor {
            type Value = Point;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or a rational string \"p/q\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Point, E> {
                v.trim()
                    .parse::<Rational64>()
                    .map(Point::Exact)
                    .map_err(|_| E::custom(format!("invalid rational {v:?}")))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Point, E> {
                Ok(Point::Real(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Point, E> {
                Ok(Point::Exact(Rational64::from_integer(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Point, E> {
                i64::try_from(v)
                    .map(|v| Point::Exact(Rational64::from_integer(v)))
                    .map_err(|_| E::custom("integer out of range"))
            }
        }
        d.deserialize_any(PointVisitor)
    }
}
