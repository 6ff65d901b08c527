use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers. Trailing zeros are
/// dropped on construction, so equality ignores them.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Young-diagram containment `self ⊆ other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(0) <= cols
    }

    /// Complement inside the `rows × cols` box, rotated by 180 degrees.
    pub fn box_complement(&self, rows: usize, cols: u32) -> Option<Partition> {
        if !self.fits_in_box(rows, cols) {
            return None;
        }
        let parts = (0..rows).map(|l| cols - self.part(rows - 1 - l)).collect();
        Some(Partition::new(parts).expect("box complement is a partition"))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions fitting in the `rows × cols` box, in lexicographic order of
/// their padded part vectors.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    fn go(rows: usize, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if prefix.len() == rows {
            out.push(Partition::new(prefix.clone()).expect("built decreasing"));
            return;
        }
        for p in 0..=max {
            prefix.push(p);
            go(rows, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::with_capacity(rows), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trailing_zeros_ignored() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert_eq!(p(&[0]), Partition::empty());
    }

    #[test]
    fn rejects_increasing() {
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn box_complement_basics() {
        assert_eq!(Partition::empty().box_complement(1, 1), Some(p(&[1])));
        assert_eq!(p(&[2, 1]).box_complement(2, 3), Some(p(&[2, 1])));
        assert_eq!(p(&[3]).box_complement(2, 3), Some(p(&[3])));
        assert_eq!(p(&[4]).box_complement(2, 3), None);
        assert_eq!(p(&[1, 1, 1]).box_complement(2, 3), None);
    }

    #[test]
    fn box_complement_is_involution() {
        for q in partitions_in_box(3, 3) {
            let c = q.box_complement(3, 3).unwrap();
            assert_eq!(c.box_complement(3, 3).unwrap(), q);
            assert_eq!(c.size() + q.size(), 9);
        }
    }

    #[test]
    fn box_enumeration_count() {
        // binomial(rows + cols, rows)
        assert_eq!(partitions_in_box(2, 2).len(), 6);
        assert_eq!(partitions_in_box(4, 4).len(), 70);
        assert_eq!(partitions_in_box(0, 3), vec![Partition::empty()]);
    }
}
