//! Per-inequality slack ledgers.

use serde::{Deserialize, Serialize};

use crate::combinatorics::HornTriple;
use crate::ext::ExtReal;

/// Which member of the inequality pair attached to a Horn triple.
///
/// `Forward` is the `I, J` versus `K̄` inequality, `Complementary` the one on
/// the complements `I^c, J^c, K̄^c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InequalityKind {
    Forward,
    Complementary,
    /// Determinant equality, used only by the invertible-case check.
    Determinant,
}

/// One evaluated inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityRecord {
    pub triple: HornTriple,
    pub kind: InequalityKind,
    pub lhs: ExtReal,
    pub rhs: ExtReal,
    pub slack: ExtReal,
}

impl InequalityRecord {
    pub fn new(triple: HornTriple, kind: InequalityKind, lhs: ExtReal, rhs: ExtReal) -> Self {
        let slack = ExtReal::slack(lhs, rhs);
        InequalityRecord {
            triple,
            kind,
            lhs,
            rhs,
            slack,
        }
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack.value() >= -tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub verdict: Verdict,
    pub tol: f64,
    pub worst_slack: ExtReal,
    /// Indices into `records` of the inequalities that fail at `tol`.
    pub violations: Vec<usize>,
    pub records: Vec<InequalityRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl MembershipReport {
    pub fn from_records(records: Vec<InequalityRecord>, tol: f64) -> Self {
        let worst_slack = records
            .iter()
            .map(|r| r.slack)
            .fold(ExtReal::INFINITY, ExtReal::min);
        let violations: Vec<usize> = records
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.holds(tol))
            .map(|(i, _)| i)
            .collect();
        let verdict = if worst_slack.value() >= -tol {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        debug_assert_eq!(verdict.is_pass(), violations.is_empty());
        MembershipReport {
            verdict,
            tol,
            worst_slack,
            violations,
            records,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn violators(&self) -> impl Iterator<Item = &InequalityRecord> {
        self.violations.iter().map(|&i| &self.records[i])
    }

    /// The record with the smallest slack (first one on ties).
    pub fn worst(&self) -> Option<&InequalityRecord> {
        self.records
            .iter()
            .reduce(|a, b| if b.slack < a.slack { b } else { a })
    }
}
