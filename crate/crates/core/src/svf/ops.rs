use rayon::prelude::*;
use serde::Serialize;

use super::interval::{complement_set, interval_set, IntervalSet};
use super::point::Point;
use super::step::StepFunction;
use crate::combinatorics::{catalog, HornTriple, MAX_CATALOG_N};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::report::{InequalityKind, InequalityRecord, MembershipReport};
use crate::spectra::{haar_unitary, product_spectrum, RngSeed, SingularSpectrum};

/// `∫_S log f`, exactly over pieces; `-inf` when `f` vanishes on a part of
/// `S` of positive measure.
pub fn log_integral(f: &StepFunction, s: &IntervalSet) -> ExtReal {
    let mut acc = 0.0;
    for (a, b, v) in f.iter_pieces() {
        for &(c, d) in s.intervals() {
            let len = b.min(Point::Exact(d)).minus(a.max(Point::Exact(c)));
            if !len.is_positive() {
                continue;
            }
            if v == 0.0 {
                return ExtReal::NEG_INFINITY;
            }
            acc += len.value() * v.ln();
        }
    }
    ExtReal::new(acc)
}

/// `∫_0^1 log f`, the log of the Fuglede–Kadison determinant of any element
/// with singular-value function `f`.
pub fn fk_determinant(f: &StepFunction) -> ExtReal {
    log_integral(f, &IntervalSet::full())
}

/// Both inequalities of one triple at the step-function level:
///
/// ```text
/// ∫_{F_I} log f + ∫_{F_J} log g          <= ∫_{F_K̄} log h
/// ∫_{F_K̄^c} log h                        <= ∫_{F_I^c} log f + ∫_{F_J^c} log g
/// ```
///
/// The records carry the slacks; apply [`InequalityRecord::holds`] with the
/// desired tolerance.
pub fn vn_inequality_check(
    f: &StepFunction,
    g: &StepFunction,
    h: &StepFunction,
    t: &HornTriple,
) -> Result<[InequalityRecord; 2]> {
    let n = t.n();
    let fi = interval_set(t.i(), n)?;
    let fj = interval_set(t.j(), n)?;
    let fk = interval_set(&t.k().bar(), n)?;
    let forward = InequalityRecord::new(
        t.clone(),
        InequalityKind::Forward,
        log_integral(f, &fi) + log_integral(g, &fj),
        log_integral(h, &fk),
    );
    let complementary = InequalityRecord::new(
        t.clone(),
        InequalityKind::Complementary,
        log_integral(h, &complement_set(&fk)),
        log_integral(f, &complement_set(&fi)) + log_integral(g, &complement_set(&fj)),
    );
    Ok([forward, complementary])
}

/// Checks every triple of the catalogs `n = 1..=max_n`. The defining system
/// is infinite, so a pass certifies only this truncation; the report says so.
pub fn vn_membership(
    f: &StepFunction,
    g: &StepFunction,
    h: &StepFunction,
    max_n: usize,
    tol: f64,
) -> Result<MembershipReport> {
    if max_n == 0 {
        return Err(Error::Domain("max_n must be at least 1".into()));
    }
    if max_n > MAX_CATALOG_N {
        return Err(Error::Capacity {
            n: max_n,
            max: MAX_CATALOG_N,
        });
    }
    let mut records = Vec::new();
    for n in 1..=max_n {
        let cat = catalog(n)?;
        let batch: Vec<[InequalityRecord; 2]> = cat
            .triples()
            .par_iter()
            .map(|t| vn_inequality_check(f, g, h, t))
            .collect::<Result<_>>()?;
        records.extend(batch.into_iter().flatten());
    }
    Ok(MembershipReport::from_records(records, tol).with_note(format!(
        "truncated check: only triples with n <= {max_n} were evaluated; the full system ranges over all n"
    )))
}

/// `s^(n)_j = exp(n ∫_{(j-1)/n}^{j/n} log s)`, the per-cell geometric means.
pub fn discretize(s: &StepFunction, n: usize) -> Result<SingularSpectrum> {
    if n == 0 {
        return Err(Error::Domain(
            "discretization size must be at least 1".into(),
        ));
    }
    let d = n as i64;
    let mut out: Vec<f64> = Vec::with_capacity(n);
    for j in 0..d {
        let (lo, hi) = (Point::ratio(j, d), Point::ratio(j + 1, d));
        let mut touched = s
            .iter_pieces()
            .filter_map(|(a, b, v)| {
                let len = b.min(hi).minus(a.max(lo));
                len.is_positive().then_some((len.value(), v))
            })
            .peekable();
        let first = touched.next().expect("cells are covered by the pieces");
        let value = if touched.peek().is_none() {
            first.1
        } else if first.1 == 0.0 {
            0.0
        } else {
            let mut acc = first.0 * first.1.ln();
            let mut zero = false;
            for (len, v) in touched {
                if v == 0.0 {
                    zero = true;
                    break;
                }
                acc += len * v.ln();
            }
            if zero {
                0.0
            } else {
                (n as f64 * acc).exp()
            }
        };
        // geometric means of a nonincreasing function are nonincreasing; keep it so under rounding
        out.push(out.last().map_or(value, |&prev: &f64| value.min(prev)));
    }
    SingularSpectrum::new(out)
}

/// Value `v_j` on `[(j-1)/n, j/n)`.
pub fn spectrum_to_step(v: &SingularSpectrum) -> StepFunction {
    StepFunction::from_spectrum(v)
}

/// One finite stage of the matrix approximation of a step-function pair.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixModel {
    pub lam: SingularSpectrum,
    pub mu: SingularSpectrum,
    /// Singular values of `diag(lam) U diag(mu)` for a Haar `U`.
    pub nu: SingularSpectrum,
    pub seed: RngSeed,
}

pub fn matrix_model(
    f: &StepFunction,
    g: &StepFunction,
    n: usize,
    seed: RngSeed,
) -> Result<MatrixModel> {
    let lam = discretize(f, n)?;
    let mu = discretize(g, n)?;
    let u = haar_unitary(n, seed);
    let nu = product_spectrum(&lam, &mu, &u)?;
    Ok(MatrixModel { lam, mu, nu, seed })
}
