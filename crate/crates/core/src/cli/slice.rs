//! Plot data for a body: Haar samples plus a traced boundary.
//!
//! For `n = 2` the body is a segment of the curve `ν₁ν₂ = det` (or of the
//! axis `ν₂ = 0` when the determinant vanishes); its endpoints are found by
//! bisection and the segment is emitted as a polyline. For invertible
//! `n = 3` the body is a convex polygon in log coordinates; its boundary is
//! traced by casting rays from the log-mean of the samples within the plane
//! of fixed determinant and bisecting for the last member point.

use std::fmt::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::horn_body::{membership, sample_body, BodySpec};
use crate::spectra::{RngSeed, SingularSpectrum};

const BOUNDARY_TOL: f64 = 1e-9;
const CURVE_POINTS: usize = 101;
const RAYS: usize = 72;
const BISECTIONS: usize = 60;

#[derive(Clone, Debug, Serialize)]
pub struct Slice {
    pub seed: RngSeed,
    pub n: usize,
    pub samples: Vec<SingularSpectrum>,
    pub boundary: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}

pub fn export_slice(spec: &BodySpec, count: usize, seed: RngSeed) -> Result<Slice> {
    let n = spec.n();
    if n < 2 {
        return Err(Error::Domain("export-slice needs n >= 2".into()));
    }
    let samples = sample_body(spec, count, seed)?;
    let invertible = spec.lam().is_strictly_positive() && spec.mu().is_strictly_positive();
    let (boundary, notice) = match n {
        2 if invertible => (curve_n2(spec, samples[0][0])?, None),
        2 => (axis_n2(spec, samples[0][0])?, None),
        3 if invertible => (rays_n3(spec, &samples)?, None),
        3 => (
            Vec::new(),
            Some("boundary tracing needs invertible spectra for n = 3; samples only".to_string()),
        ),
        _ => (
            Vec::new(),
            Some(format!(
                "boundary tracing supports n <= 3, got n = {n}; samples only"
            )),
        ),
    };
    Ok(Slice {
        seed,
        n,
        samples,
        boundary,
        notice,
    })
}

impl Slice {
    /// `# seed=` line, optional `# notice:` line, header, then rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# seed={}", self.seed.0).unwrap();
        if let Some(msg) = &self.notice {
            writeln!(out, "# notice: {msg}").unwrap();
        }
        out.push_str("kind");
        for i in 1..=self.n {
            write!(out, ",nu{i}").unwrap();
        }
        out.push('\n');
        let rows = self
            .samples
            .iter()
            .map(|s| ("sample", s.values()))
            .chain(self.boundary.iter().map(|b| ("boundary", b.as_slice())));
        for (kind, vals) in rows {
            out.push_str(kind);
            for v in vals {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn is_member(spec: &BodySpec, nu: Vec<f64>) -> Result<bool> {
    match SingularSpectrum::new(nu) {
        Ok(s) => Ok(membership(spec, &s, BOUNDARY_TOL)?.passed()),
        Err(_) => Ok(false),
    }
}

/// Largest `x` in `[inside, outside]` (either order) still accepted, assuming
/// `pred(inside)` holds and the accepted set is an interval.
fn bisect(mut inside: f64, mut outside: f64, pred: impl Fn(f64) -> Result<bool>) -> Result<f64> {
    if pred(outside)? {
        return Ok(outside);
    }
    for _ in 0..BISECTIONS {
        let mid = 0.5 * (inside + outside);
        if pred(mid)? {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(inside)
}

fn curve_n2(spec: &BodySpec, anchor: f64) -> Result<Vec<Vec<f64>>> {
    let det = spec.lam()[0] * spec.lam()[1] * spec.mu()[0] * spec.mu()[1];
    let on_curve = |log_t: f64| {
        let t = log_t.exp();
        is_member(spec, vec![t, det / t])
    };
    let lo_bound = 0.5 * det.ln();
    let hi_bound = (spec.lam()[0] * spec.mu()[0]).ln();
    let a = anchor.ln().clamp(lo_bound, hi_bound);
    let lo = bisect(a, lo_bound, on_curve)?;
    let hi = bisect(a, hi_bound, on_curve)?;
    Ok((0..CURVE_POINTS)
        .map(|k| {
            let t = (lo + (hi - lo) * k as f64 / (CURVE_POINTS - 1) as f64).exp();
            vec![t, det / t]
        })
        .collect())
}

fn axis_n2(spec: &BodySpec, anchor: f64) -> Result<Vec<Vec<f64>>> {
    let on_axis = |t: f64| is_member(spec, vec![t, 0.0]);
    let hi_bound = spec.lam()[0] * spec.mu()[0];
    let a = anchor.clamp(0.0, hi_bound);
    let lo = bisect(a, 0.0, on_axis)?;
    let hi = bisect(a, hi_bound, on_axis)?;
    Ok((0..CURVE_POINTS)
        .map(|k| vec![lo + (hi - lo) * k as f64 / (CURVE_POINTS - 1) as f64, 0.0])
        .collect())
}

fn rays_n3(spec: &BodySpec, samples: &[SingularSpectrum]) -> Result<Vec<Vec<f64>>> {
    let mut center = [0.0; 3];
    for s in samples {
        for (c, v) in center.iter_mut().zip(s.values()) {
            *c += v.ln() / samples.len() as f64;
        }
    }
    // orthonormal basis of the plane Σ x = 0
    let e1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let e2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    let spread = (spec.lam()[0] * spec.mu()[0]).ln() - (spec.lam()[2] * spec.mu()[2]).ln();
    let reach = 2.0 * spread.max(1e-6);
    let mut out = Vec::with_capacity(RAYS);
    for k in 0..RAYS {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / RAYS as f64;
        let dir: Vec<f64> = (0..3)
            .map(|i| theta.cos() * e1[i] + theta.sin() * e2[i])
            .collect();
        let point =
            |s: f64| -> Vec<f64> { (0..3).map(|i| (center[i] + s * dir[i]).exp()).collect() };
        let s = bisect(0.0, reach, |s| is_member(spec, point(s)))?;
        out.push(point(s));
    }
    Ok(out)
}
