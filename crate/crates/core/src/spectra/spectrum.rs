use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::ExtReal;

/// A nonincreasing, nonnegative real vector: singular values `s_1 >= ... >= s_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SingularSpectrum(Vec<f64>);

impl SingularSpectrum {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        if let Some(bad) = values.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidSpectrum(format!(
                "entry {bad} is negative or not finite"
            )));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidSpectrum(format!(
                "{values:?} is not nonincreasing"
            )));
        }
        Ok(SingularSpectrum(values))
    }

    /// Sorts into nonincreasing order and clamps negatives to zero.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        for v in &mut values {
            if v.is_nan() {
                return Err(Error::InvalidSpectrum("NaN entry".into()));
            }
            *v = v.max(0.0);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        SingularSpectrum::new(values)
    }

    pub fn constant(n: usize, value: f64) -> Result<Self> {
        SingularSpectrum::new(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn largest(&self) -> f64 {
        self.0[0]
    }

    /// Componentwise natural logs, `-inf` for zeros.
    pub fn logs(&self) -> Vec<ExtReal> {
        self.0.iter().map(|&x| ExtReal::ln(x)).collect()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0.0)
    }

    /// Euclidean distance to another spectrum of the same length.
    pub fn distance(&self, other: &SingularSpectrum) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// `s + eps` in every coordinate.
    pub fn shifted(&self, eps: f64) -> Result<Self> {
        if !eps.is_finite() || eps < 0.0 {
            return Err(Error::Domain(format!("shift {eps} must be finite and nonnegative")));
        }
        Ok(SingularSpectrum(self.0.iter().map(|x| x + eps).collect()))
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !c.is_finite() || c <= 0.0 {
            return Err(Error::Domain(format!("scale {c} must be positive")));
        }
        Ok(SingularSpectrum(self.0.iter().map(|x| x * c).collect()))
    }
}

impl Index<usize> for SingularSpectrum {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl TryFrom<Vec<f64>> for SingularSpectrum {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        SingularSpectrum::new(v)
    }
}

impl From<SingularSpectrum> for Vec<f64> {
    fn from(s: SingularSpectrum) -> Vec<f64> {
        s.0
    }
}
