use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::Partition;
use crate::error::{Error, Result};

/// A subset of `{1, ..., n}` stored as a strictly increasing list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSubset {
    n: usize,
    elements: Vec<usize>,
}

impl IndexSubset {
    pub fn new(n: usize, elements: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSubset("ambient size must be positive".into()));
        }
        if let Some(&bad) = elements.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidSubset(format!(
                "element {bad} outside 1..={n}"
            )));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSubset(format!(
                "elements {elements:?} are not strictly increasing"
            )));
        }
        Ok(IndexSubset { n, elements })
    }

    pub fn empty(n: usize) -> Self {
        IndexSubset {
            n,
            elements: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        IndexSubset {
            n,
            elements: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cardinality `r`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// 1-based elements.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, k: usize) -> bool {
        self.elements.binary_search(&k).is_ok()
    }

    /// `K̄ = {n + 1 - k : k ∈ K}`.
    pub fn bar(&self) -> IndexSubset {
        let elements = self
            .elements
            .iter()
            .rev()
            .map(|&k| self.n + 1 - k)
            .collect();
        IndexSubset {
            n: self.n,
            elements,
        }
    }

    /// Complement in `{1, ..., n}`.
    pub fn complement(&self) -> IndexSubset {
        let elements = (1..=self.n).filter(|k| !self.contains(*k)).collect();
        IndexSubset {
            n: self.n,
            elements,
        }
    }

    /// `Σ_ℓ (s(ℓ) - ℓ)`, the left-hand side contribution of this set to the
    /// dimension identity for Horn triples.
    pub fn shift_sum(&self) -> usize {
        self.elements
            .iter()
            .enumerate()
            .map(|(l, &s)| s - (l + 1))
            .sum()
    }

    /// The Schubert-class partition with parts `n - r + ℓ - s(ℓ)`.
    ///
    /// It is the codimension data of `{V : dim(V ∩ E_{s(ℓ)}) >= ℓ}` in the
    /// Grassmannian of `r`-planes and fits in the `r × (n - r)` box.
    pub fn co_partition(&self) -> Partition {
        let r = self.len();
        let parts = self
            .elements
            .iter()
            .enumerate()
            .map(|(l, &s)| (self.n - r + l + 1 - s) as u32)
            .collect();
        Partition::new(parts).expect("co-partition parts are weakly decreasing")
    }

    /// Values `values[s - 1]` for `s` in the subset.
    pub fn select<'a, T: Copy>(&'a self, values: &'a [T]) -> impl Iterator<Item = T> + 'a {
        self.elements.iter().map(move |&s| values[s - 1])
    }
}

impl fmt::Display for IndexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.elements.iter().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// All `r`-subsets of `{1, ..., n}` in lexicographic order.
pub fn subsets(n: usize, r: usize) -> Vec<IndexSubset> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut current: Vec<usize> = (1..=r).collect();
    loop {
        out.push(IndexSubset {
            n,
            elements: current.clone(),
        });
        // advance to the next combination
        let mut pos = r;
        while pos > 0 && current[pos - 1] == n - r + pos {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        current[pos - 1] += 1;
        for q in pos..r {
            current[q] = current[q - 1] + 1;
        }
    }
    out
}
