use std::cmp::Ordering;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::point::{Point, ENDPOINT_TOL};
use crate::error::{Error, Result};
use crate::spectra::SingularSpectrum;

/// A right-continuous, nonincreasing, nonnegative step function on `[0, 1]`:
/// value `values[j]` on `[breakpoints[j], breakpoints[j + 1])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStep")]
pub struct StepFunction {
    breakpoints: Vec<Point>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawStep {
    breakpoints: Vec<Point>,
    values: Vec<f64>,
}

impl TryFrom<RawStep> for StepFunction {
    type Error = Error;

    fn try_from(raw: RawStep) -> Result<Self> {
        StepFunction::new(raw.breakpoints, raw.values)
    }
}

impl StepFunction {
    /// Validates the data. Real endpoints within [`ENDPOINT_TOL`] of 0 or 1
    /// are snapped to the exact endpoint.
    pub fn new(mut breakpoints: Vec<Point>, values: Vec<f64>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidStepFunction(msg));
        if values.is_empty() {
            return bad("at least one piece is required".into());
        }
        if breakpoints.len() != values.len() + 1 {
            return bad(format!(
                "{} values need {} breakpoints, got {}",
                values.len(),
                values.len() + 1,
                breakpoints.len()
            ));
        }
        let last = breakpoints.len() - 1;
        for (idx, target) in [(0, Point::zero()), (last, Point::one())] {
            let p = breakpoints[idx];
            if let Point::Real(x) = p {
                if !x.is_finite() {
                    return bad(format!("breakpoint {x} is not finite"));
                }
                if (x - target.value()).abs() <= ENDPOINT_TOL {
                    breakpoints[idx] = target;
                }
            }
            if breakpoints[idx] != target {
                return bad(format!(
                    "breakpoints must run from 0 to 1, found endpoint {p}"
                ));
            }
        }
        for w in breakpoints.windows(2) {
            if let Point::Real(x) = w[1] {
                if !x.is_finite() {
                    return bad(format!("breakpoint {x} is not finite"));
                }
            }
            if !w[1].minus(w[0]).is_positive() {
                return bad(format!(
                    "breakpoints must increase strictly: {} then {}",
                    w[0], w[1]
                ));
            }
        }
        for (j, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return bad(format!("value {v} is not a finite nonnegative number"));
            }
            if j > 0 && v > values[j - 1] {
                return bad(format!(
                    "values must be nonincreasing: {} then {v}",
                    values[j - 1]
                ));
            }
        }
        Ok(StepFunction {
            breakpoints,
            values,
        })
    }

    pub fn constant(c: f64) -> Result<Self> {
        StepFunction::new(vec![Point::zero(), Point::one()], vec![c])
    }

    /// Interior breakpoints given as reals; the endpoints 0 and 1 are added.
    pub fn from_reals(interior: &[f64], values: Vec<f64>) -> Result<Self> {
        let mut b = vec![Point::zero()];
        b.extend(interior.iter().map(|&x| Point::Real(x)));
        b.push(Point::one());
        StepFunction::new(b, values)
    }

    /// Interior breakpoints given as exact rationals; the endpoints are added.
    pub fn from_rationals(interior: &[Rational64], values: Vec<f64>) -> Result<Self> {
        let mut b = vec![Point::zero()];
        b.extend(interior.iter().map(|&r| Point::Exact(r)));
        b.push(Point::one());
        StepFunction::new(b, values)
    }

    /// Value `v_j` on `[(j-1)/n, j/n)`.
    pub fn from_spectrum(v: &SingularSpectrum) -> Self {
        let n = v.len() as i64;
        let breakpoints = (0..=n).map(|j| Point::ratio(j, n)).collect();
        StepFunction {
            breakpoints,
            values: v.values().to_vec(),
        }
    }

    pub fn breakpoints(&self) -> &[Point] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn pieces(&self) -> usize {
        self.values.len()
    }

    /// `(start, end, value)` per piece.
    pub fn iter_pieces(&self) -> impl Iterator<Item = (Point, Point, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &v)| (w[0], w[1], v))
    }

    /// Right-continuous evaluation; `eval(1)` is the last value.
    pub fn eval(&self, t: f64) -> f64 {
        let idx = self.breakpoints[1..self.breakpoints.len() - 1]
            .iter()
            .take_while(|b| b.value().total_cmp(&t) != Ordering::Greater)
            .count();
        self.values[idx]
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::Domain(format!(
                "scale factor {c} must be finite and nonnegative"
            )));
        }
        Ok(StepFunction {
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| v * c).collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("step functions serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(StepFunction::from_reals(&[0.5], vec![2.0, 1.0]).is_ok());
        assert!(StepFunction::from_reals(&[0.5], vec![1.0, 2.0]).is_err());
        assert!(StepFunction::from_reals(&[0.5], vec![1.0, -1.0]).is_err());
        assert!(StepFunction::from_reals(&[0.5, 0.5], vec![3.0, 2.0, 1.0]).is_err());
        assert!(StepFunction::from_reals(&[], vec![]).is_err());
        assert!(StepFunction::new(vec![Point::Real(0.1), Point::one()], vec![1.0]).is_err());
        assert!(StepFunction::from_reals(&[1.5], vec![2.0, 1.0]).is_err());
    }

    #[test]
    fn endpoints_snap() {
        let f = StepFunction::new(
            vec![Point::Real(1e-14), Point::Real(1.0 - 1e-14)],
            vec![1.0],
        )
        .unwrap();
        assert_eq!(f.breakpoints(), &[Point::zero(), Point::one()]);
    }

    #[test]
    fn eval_is_right_continuous() {
        let f = StepFunction::from_rationals(&[Rational64::new(1, 2)], vec![2.0, 1.0]).unwrap();
        assert_eq!(f.eval(0.0), 2.0);
        assert_eq!(f.eval(0.49), 2.0);
        assert_eq!(f.eval(0.5), 1.0);
        assert_eq!(f.eval(1.0), 1.0);
    }

    #[test]
    fn json_round_trip() {
        let f = StepFunction::new(
            vec![
                Point::zero(),
                Point::ratio(1, 3),
                Point::Real(0.75),
                Point::one(),
            ],
            vec![3.0, 2.0, 0.0],
        )
        .unwrap();
        let s = f.to_json();
        assert_eq!(
            s,
            r#"{"breakpoints":["0","1/3",0.75,"1"],"values":[3.0,2.0,0.0]}"#
        );
        assert_eq!(serde_json::from_str::<StepFunction>(&s).unwrap(), f);
        let bad = r#"{"breakpoints":["0","1"],"values":[1.0, 2.0]}"#;
        assert!(serde_json::from_str::<StepFunction>(bad).is_err());
    }
}
