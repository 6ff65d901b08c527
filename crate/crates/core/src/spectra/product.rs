use super::matrix::ComplexMatrix;
use super::spectrum::SingularSpectrum;
use super::svd::{singular_values, singular_values_with_scale};
use crate::combinatorics::{IndexSubset, TripleCatalog};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::report::{InequalityKind, InequalityRecord, MembershipReport};

/// Tolerance on `‖U*U - I‖` accepted by [`product_spectrum`], per dimension.
const UNITARY_TOL: f64 = 1e-8;

/// Singular values of `diag(lam) · u · diag(mu)`.
pub fn product_spectrum(
    lam: &SingularSpectrum,
    mu: &SingularSpectrum,
    u: &ComplexMatrix,
) -> Result<SingularSpectrum> {
    let n = u.dim();
    for s in [lam, mu] {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
    }
    let defect = u.unitarity_defect();
    if defect > UNITARY_TOL * n as f64 {
        return Err(Error::InvalidMatrix(format!(
            "not unitary (defect {defect:.3e})"
        )));
    }
    let x = u.scale_rows_cols(lam.values(), mu.values())?;
    singular_values_with_scale(&x, lam.largest() * mu.largest())
}

/// Log-domain records of both inequality families for every catalog triple:
///
/// ```text
/// Σ_I log λ + Σ_J log μ        <= Σ_K̄ log ν
/// Σ_K̄^c log ν                  <= Σ_I^c log λ + Σ_J^c log μ
/// ```
pub fn multiplicative_records(
    lam: &SingularSpectrum,
    mu: &SingularSpectrum,
    nu: &SingularSpectrum,
    catalog: &TripleCatalog,
) -> Result<Vec<InequalityRecord>> {
    let n = catalog.n();
    for s in [lam, mu, nu] {
        if s.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.len(),
            });
        }
    }
    let (ll, lm, ln) = (lam.logs(), mu.logs(), nu.logs());
    let sum = |v: &[ExtReal], s: &IndexSubset| -> ExtReal { s.select(v).sum() };
    let mut records = Vec::with_capacity(2 * catalog.len());
    for t in catalog {
        let kbar = t.k().bar();
        records.push(InequalityRecord::new(
            t.clone(),
            InequalityKind::Forward,
            sum(&ll, t.i()) + sum(&lm, t.j()),
            sum(&ln, &kbar),
        ));
        records.push(InequalityRecord::new(
            t.clone(),
            InequalityKind::Complementary,
            sum(&ln, &kbar.complement()),
            sum(&ll, &t.i().complement()) + sum(&lm, &t.j().complement()),
        ));
    }
    Ok(records)
}

/// Evaluates both inequality families on `s(A)`, `s(B)` and `s(AB)`, with
/// `-inf` allowed for logs of zero singular values.
pub fn product_inequality_check(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    catalog: &TripleCatalog,
    tol: f64,
) -> Result<MembershipReport> {
    let n = catalog.n();
    for m in [a, b] {
        if m.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.dim(),
            });
        }
    }
    let sa = singular_values(a)?;
    let sb = singular_values(b)?;
    let d = a.try_mul(b)?;
    // rounding in AB is relative to ‖A‖‖B‖, not to ‖AB‖
    let sd = singular_values_with_scale(&d, sa.largest() * sb.largest())?;
    let records = multiplicative_records(&sa, &sb, &sd, catalog)?;
    Ok(MembershipReport::from_records(records, tol))
}
