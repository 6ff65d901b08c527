use super::catalog::TripleCatalog;
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::report::{InequalityKind, InequalityRecord, MembershipReport};

/// Checks the additive Horn inequalities for `D = A + B` with eigenvalues
/// `alpha`, `beta` and `rho` (each nonincreasing):
///
/// ```text
/// Σ_I α + Σ_J β <= Σ_K̄ ρ + tol
/// Σ_I^c α + Σ_J^c β >= Σ_K̄^c ρ - tol
/// ```
///
/// Complements are taken in `{1, ..., n}`; for `(∅, ∅, ∅)` the second
/// inequality compares the full traces.
pub fn additive_horn_check(
    alpha: &[f64],
    beta: &[f64],
    rho: &[f64],
    catalog: &TripleCatalog,
    tol: f64,
) -> Result<MembershipReport> {
    let n = catalog.n();
    for v in [alpha, beta, rho] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        check_nonincreasing(v)?;
    }
    let sum = |v: &[f64], s: &crate::combinatorics::IndexSubset| -> ExtReal {
        ExtReal::new(s.select(v).sum::<f64>())
    };
    let mut records = Vec::with_capacity(2 * catalog.len());
    for t in catalog {
        let kbar = t.k().bar();
        records.push(InequalityRecord::new(
            t.clone(),
            InequalityKind::Forward,
            sum(alpha, t.i()) + sum(beta, t.j()),
            sum(rho, &kbar),
        ));
        records.push(InequalityRecord::new(
            t.clone(),
            InequalityKind::Complementary,
            sum(rho, &kbar.complement()),
            sum(alpha, &t.i().complement()) + sum(beta, &t.j().complement()),
        ));
    }
    Ok(MembershipReport::from_records(records, tol))
}

pub fn check_nonincreasing(v: &[f64]) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidSpectrum(format!("non-finite entry in {v:?}")));
    }
    if v.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidSpectrum(format!(
            "{v:?} is not nonincreasing"
        )));
    }
    Ok(())
}
