//! Extended reals for log-domain bookkeeping.
//!
//! Logarithms of singular values may be `-inf`. Sums absorb `-inf`, and the
//! difference of two `-inf` values is taken to be `0`, so an inequality
//! `-inf <= -inf` holds with zero slack.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const NEG_INFINITY: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Panics on NaN.
    pub fn new(value: f64) -> Self {
        assert!(!value.is_nan(), "ExtReal cannot hold NaN");
        ExtReal(value)
    }

    /// `ln(x)` with `ln(0) = -inf`. Negative inputs are treated as zero.
    pub fn ln(x: f64) -> Self {
        if x > 0.0 {
            ExtReal(x.ln())
        } else {
            Self::NEG_INFINITY
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_neg_infinite(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// `rhs - lhs` with `(-inf) - (-inf) = 0`.
    pub fn slack(lhs: ExtReal, rhs: ExtReal) -> ExtReal {
        if lhs.0 == rhs.0 && lhs.0.is_infinite() {
            ExtReal::ZERO
        } else {
            ExtReal(rhs.0 - lhs.0)
        }
    }

    pub fn exp(self) -> f64 {
        self.0.exp()
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    pub fn total_cmp(&self, other: &ExtReal) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl From<f64> for ExtReal {
    fn from(value: f64) -> Self {
        ExtReal::new(value)
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        // +inf + -inf never arises: +inf is only produced by `slack`.
        if self.is_neg_infinite() || rhs.is_neg_infinite() {
            ExtReal::NEG_INFINITY
        } else {
            ExtReal(self.0 + rhs.0)
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        ExtReal(-self.0)
    }
}

impl Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

// JSON has no infinities: finite values are numbers, infinities are the
// strings "-inf" / "inf".
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            serializer.serialize_f64(self.0)
        } else if self.0 < 0.0 {
            serializer.serialize_str("-inf")
        } else {
            serializer.serialize_str("inf")
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a number or one of \"-inf\", \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
                Ok(ExtReal(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal, E> {
                match v {
                    "-inf" => Ok(ExtReal::NEG_INFINITY),
                    "inf" => Ok(ExtReal::INFINITY),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
