use std::sync::Arc;

use crate::combinatorics::{catalog, HornTriple, TripleCatalog};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::report::{InequalityKind, InequalityRecord, MembershipReport};
use crate::spectra::{multiplicative_records, SingularSpectrum};

/// The pair `(λ, μ)` of singular-value sequences defining the body
/// `K(λ, μ) = { s(diag(λ) U diag(μ)) : U unitary }`.
#[derive(Clone, Debug)]
pub struct BodySpec {
    lam: SingularSpectrum,
    mu: SingularSpectrum,
    catalog: Arc<TripleCatalog>,
}

impl BodySpec {
    /// Uses the memoized catalog for `n = lam.len()`.
    pub fn new(lam: SingularSpectrum, mu: SingularSpectrum) -> Result<Self> {
        let cat = catalog(lam.len())?;
        BodySpec::with_catalog(lam, mu, cat)
    }

    pub fn with_catalog(
        lam: SingularSpectrum,
        mu: SingularSpectrum,
        catalog: Arc<TripleCatalog>,
    ) -> Result<Self> {
        let n = catalog.n();
        for s in [&lam, &mu] {
            if s.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.len(),
                });
            }
        }
        Ok(BodySpec { lam, mu, catalog })
    }

    pub fn from_values(lam: &[f64], mu: &[f64]) -> Result<Self> {
        BodySpec::new(
            SingularSpectrum::new(lam.to_vec())?,
            SingularSpectrum::new(mu.to_vec())?,
        )
    }

    pub fn n(&self) -> usize {
        self.catalog.n()
    }

    pub fn lam(&self) -> &SingularSpectrum {
        &self.lam
    }

    pub fn mu(&self) -> &SingularSpectrum {
        &self.mu
    }

    pub fn catalog(&self) -> &TripleCatalog {
        &self.catalog
    }
}

/// Decides `ν ∈ K(λ, μ)` through the full inequality system: for every
/// catalog triple, both
///
/// ```text
/// Π_I λ · Π_J μ        <= Π_K̄ ν
/// Π_I^c λ · Π_J^c μ    >= Π_K̄^c ν
/// ```
///
/// evaluated as log-sums. `tol` is an absolute log-domain slack.
pub fn membership(spec: &BodySpec, nu: &SingularSpectrum, tol: f64) -> Result<MembershipReport> {
    let records = multiplicative_records(&spec.lam, &spec.mu, nu, &spec.catalog)?;
    Ok(MembershipReport::from_records(records, tol))
}

/// The invertible-case test: `Π ν = Π λ · Π μ` (within `tol` in logs) plus
/// the forward inequalities only. All entries must be positive.
pub fn membership_invertible(
    spec: &BodySpec,
    nu: &SingularSpectrum,
    tol: f64,
) -> Result<MembershipReport> {
    let n = spec.n();
    if nu.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: nu.len(),
        });
    }
    for (name, s) in [("lambda", &spec.lam), ("mu", &spec.mu), ("nu", nu)] {
        if !s.is_strictly_positive() {
            return Err(Error::Domain(format!(
                "{name} has a zero entry; invertible case needs positive spectra"
            )));
        }
    }
    let (ll, lm, ln) = (spec.lam.logs(), spec.mu.logs(), nu.logs());
    let det_lhs: ExtReal = ll.iter().chain(&lm).copied().sum();
    let det_rhs: ExtReal = ln.iter().copied().sum();
    let gap = (det_rhs.value() - det_lhs.value()).abs();
    let full: Vec<usize> = (1..=n).collect();
    let mut records = vec![InequalityRecord {
        triple: HornTriple::from_slices(n, &full, &full, &full)?,
        kind: InequalityKind::Determinant,
        lhs: det_lhs,
        rhs: det_rhs,
        slack: ExtReal::new(-gap),
    }];
    for t in spec.catalog.iter() {
        let lhs: ExtReal = t.i().select(&ll).chain(t.j().select(&lm)).sum();
        let rhs: ExtReal = t.k().bar().select(&ln).sum();
        records.push(InequalityRecord::new(
            t.clone(),
            InequalityKind::Forward,
            lhs,
            rhs,
        ));
    }
    Ok(MembershipReport::from_records(records, tol))
}

/// `s + eps` in every coordinate.
pub fn epsilon_shift(s: &SingularSpectrum, eps: f64) -> Result<SingularSpectrum> {
    s.shifted(eps)
}

/// True when `ν` sits on the boundary of the body: some inequality other than
/// the trivial `r = 0` / `r = n` ones is tight within `tight` with both sides
/// finite, or two entries of `ν` coincide (relative `tight`).
pub fn on_boundary(report: &MembershipReport, nu: &SingularSpectrum, tight: f64) -> bool {
    let n = nu.len();
    let tight_record = report.records.iter().any(|rec| {
        let r = rec.triple.r();
        r != 0 && r != n && rec.lhs.is_finite() && rec.rhs.is_finite() && rec.slack.value() <= tight
    });
    let collision = nu
        .values()
        .windows(2)
        .any(|w| w[0] > 0.0 && (w[0] - w[1]) <= tight * w[0]);
    tight_record || collision
}
