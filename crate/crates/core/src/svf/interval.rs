use num_rational::Rational64;
use serde::{Serialize, Serializer};

use super::point::rational_to_f64;
use crate::combinatorics::IndexSubset;
use crate::error::{Error, Result};

/// A finite union of disjoint closed subintervals of `[0, 1]` with rational
/// endpoints, sorted, with touching intervals merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSet {
    intervals: Vec<(Rational64, Rational64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet {
            intervals: Vec::new(),
        }
    }

    pub fn full() -> Self {
        IntervalSet {
            intervals: vec![(zero(), one())],
        }
    }

    /// Normalizes arbitrary intervals: drops degenerate ones, sorts and merges.
    pub fn new(mut intervals: Vec<(Rational64, Rational64)>) -> Result<Self> {
        for &(a, b) in &intervals {
            if a < zero() || b > one() || a > b {
                return Err(Error::Domain(format!(
                    "interval [{a}, {b}] is not inside [0, 1]"
                )));
            }
        }
        intervals.retain(|(a, b)| a < b);
        intervals.sort();
        let mut merged: Vec<(Rational64, Rational64)> = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Ok(IntervalSet { intervals: merged })
    }

    pub fn intervals(&self) -> &[(Rational64, Rational64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Exact Lebesgue measure.
    pub fn measure(&self) -> Rational64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn measure_f64(&self) -> f64 {
        rational_to_f64(self.measure())
    }
}

/// Serialized as a list of `["a", "b"]` rational-string pairs.
impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .intervals
            .iter()
            .map(|(a, b)| [a.to_string(), b.to_string()])
            .collect();
        pairs.serialize(s)
    }
}

/// `F_I`: the union of `[(i-1)/n, i/n]` over `i ∈ I`.
pub fn interval_set(subset: &IndexSubset, n: usize) -> Result<IntervalSet> {
    if subset.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: subset.n(),
        });
    }
    let d = n as i64;
    IntervalSet::new(
        subset
            .elements()
            .iter()
            .map(|&i| {
                (
                    Rational64::new(i as i64 - 1, d),
                    Rational64::new(i as i64, d),
                )
            })
            .collect(),
    )
}

/// Closure of `[0, 1] \ s`.
pub fn complement_set(s: &IntervalSet) -> IntervalSet {
    let mut out = Vec::with_capacity(s.intervals.len() + 1);
    let mut cursor = zero();
    for &(a, b) in &s.intervals {
        if a > cursor {
            out.push((cursor, a));
        }
        cursor = b;
    }
    if cursor < one() {
        out.push((cursor, one()));
    }
    IntervalSet { intervals: out }
}

fn zero() -> Rational64 {
    Rational64::from_integer(0)
}

fn one() -> Rational64 {
    Rational64::from_integer(1)
}
