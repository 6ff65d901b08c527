//! Horn triples and the catalog `H(n, 0) ∪ ... ∪ H(n, n)`.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lr::lr_coefficient;
use super::partition::Partition;
use super::subset::{subsets, IndexSubset};
use crate::error::{Error, Result};

/// Largest ambient size the enumerator accepts.
pub const MAX_CATALOG_N: usize = 8;

/// Version tag written into catalog files.
pub const CATALOG_FORMAT_VERSION: u32 = 1;

/// Catalogs for `n` at or above this size are persisted when a cache
/// directory is available.
pub const CACHE_FROM_N: usize = 6;

/// A triple `(I, J, K)` of equal-size subsets of `{1, ..., n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TripleRepr", into = "TripleRepr")]
pub struct HornTriple {
    i: IndexSubset,
    j: IndexSubset,
    k: IndexSubset,
}

impl HornTriple {
    pub fn new(i: IndexSubset, j: IndexSubset, k: IndexSubset) -> Result<Self> {
        let n = i.n();
        if j.n() != n || k.n() != n {
            return Err(Error::InvalidSubset(
                "subsets live in different ambient sizes".into(),
            ));
        }
        if j.len() != i.len() || k.len() != i.len() {
            return Err(Error::InvalidSubset(format!(
                "cardinalities differ: |I|={}, |J|={}, |K|={}",
                i.len(),
                j.len(),
                k.len()
            )));
        }
        Ok(HornTriple { i, j, k })
    }

    pub fn from_slices(n: usize, i: &[usize], j: &[usize], k: &[usize]) -> Result<Self> {
        HornTriple::new(
            IndexSubset::new(n, i.to_vec())?,
            IndexSubset::new(n, j.to_vec())?,
            IndexSubset::new(n, k.to_vec())?,
        )
    }

    /// The triple `(∅, ∅, ∅)`.
    pub fn empty(n: usize) -> Self {
        HornTriple {
            i: IndexSubset::empty(n),
            j: IndexSubset::empty(n),
            k: IndexSubset::empty(n),
        }
    }

    pub fn n(&self) -> usize {
        self.i.n()
    }

    pub fn r(&self) -> usize {
        self.i.len()
    }

    pub fn i(&self) -> &IndexSubset {
        &self.i
    }

    pub fn j(&self) -> &IndexSubset {
        &self.j
    }

    pub fn k(&self) -> &IndexSubset {
        &self.k
    }

    /// `Σ_ℓ (i(ℓ)-ℓ) + (j(ℓ)-ℓ) + (k(ℓ)-ℓ) = 2r(n-r)`.
    pub fn satisfies_dimension_identity(&self) -> bool {
        let r = self.r();
        self.i.shift_sum() + self.j.shift_sum() + self.k.shift_sum() == 2 * r * (self.n() - r)
    }

    /// Triple intersection number of the Schubert classes attached to
    /// `I`, `J`, `K` in the Grassmannian of `r`-planes in `C^n`.
    ///
    /// Zero whenever the dimension identity fails.
    pub fn coefficient(&self) -> u64 {
        if !self.satisfies_dimension_identity() {
            return 0;
        }
        let r = self.r();
        let cols = (self.n() - r) as u32;
        let dual = self
            .k
            .co_partition()
            .box_complement(r, cols)
            .expect("co-partitions fit in the r × (n - r) box");
        lr_coefficient(&self.i.co_partition(), &self.j.co_partition(), &dual)
    }
}

impl fmt::Display for HornTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(I={}, J={}, K={})", self.i, self.j, self.k)
    }
}

#[derive(Serialize, Deserialize)]
struct TripleRepr {
    n: usize,
    r: usize,
    #[serde(rename = "I")]
    i: Vec<usize>,
    #[serde(rename = "J")]
    j: Vec<usize>,
    #[serde(rename = "K")]
    k: Vec<usize>,
}

impl TryFrom<TripleRepr> for HornTriple {
    type Error = Error;

    fn try_from(t: TripleRepr) -> Result<Self> {
        let triple = HornTriple::from_slices(t.n, &t.i, &t.j, &t.k)?;
        if triple.r() != t.r {
            return Err(Error::InvalidSubset(format!(
                "r = {} but |I| = {}",
                t.r,
                triple.r()
            )));
        }
        Ok(triple)
    }
}

impl From<HornTriple> for TripleRepr {
    fn from(t: HornTriple) -> Self {
        TripleRepr {
            n: t.n(),
            r: t.r(),
            i: t.i.elements().to_vec(),
            j: t.j.elements().to_vec(),
            k: t.k.elements().to_vec(),
        }
    }
}

/// All Horn triples with coefficient one for a fixed `n`, `(∅, ∅, ∅)` included.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleCatalog {
    n: usize,
    triples: Vec<HornTriple>,
}

impl TripleCatalog {
    /// Enumerates the catalog by scanning every triple of `r`-subsets.
    ///
    /// Order: by `r`, then lexicographically by `I`, `J`, `K`.
    pub fn enumerate(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let per_r: Vec<Vec<HornTriple>> = (0..=n)
            .into_par_iter()
            .map(|r| triples_of_rank(n, r))
            .collect();
        Ok(TripleCatalog {
            n,
            triples: per_r.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triples(&self) -> &[HornTriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, HornTriple> {
        self.triples.iter()
    }

    /// Triples in `H(n, r)`.
    pub fn of_rank(&self, r: usize) -> impl Iterator<Item = &HornTriple> {
        self.triples.iter().filter(move |t| t.r() == r)
    }

    pub fn to_file_format(&self) -> CatalogFile {
        CatalogFile {
            n: self.n,
            version: CATALOG_FORMAT_VERSION,
            triples: self
                .triples
                .iter()
                .map(|t| CatalogEntry {
                    r: t.r(),
                    i: t.i.elements().to_vec(),
                    j: t.j.elements().to_vec(),
                    k: t.k.elements().to_vec(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file_format()).expect("catalog serializes")
    }

    /// Parses the JSON catalog format. Every entry is re-validated: equal
    /// cardinalities, the dimension identity and `r` matching `|I|`.
    /// Coefficients are not recomputed.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: CatalogFile = serde_json::from_str(text)?;
        TripleCatalog::try_from(file)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        TripleCatalog::from_json(&fs::read_to_string(path)?)
    }

    /// Loads the catalog from `cache_dir` when present, otherwise enumerates
    /// it; catalogs with `n >= CACHE_FROM_N` are then written back.
    pub fn load_or_enumerate(n: usize, cache_dir: Option<&Path>) -> Result<Self> {
        check_capacity(n)?;
        let Some(dir) = cache_dir.filter(|_| n >= CACHE_FROM_N) else {
            return TripleCatalog::enumerate(n);
        };
        let path = cache_path(dir, n);
        if path.exists() {
            let cat = TripleCatalog::load(&path)?;
            if cat.n != n {
                return Err(Error::Catalog(format!(
                    "{} holds n = {}",
                    path.display(),
                    cat.n
                )));
            }
            return Ok(cat);
        }
        let cat = TripleCatalog::enumerate(n)?;
        cat.save(&path)?;
        Ok(cat)
    }
}

impl<'a> IntoIterator for &'a TripleCatalog {
    type Item = &'a HornTriple;
    type IntoIter = std::slice::Iter<'a, HornTriple>;

    fn into_iter(self) -> Self::IntoIter {
        self.triples.iter()
    }
}

/// `<dir>/catalog-n<n>-v<version>.json`
pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("catalog-n{n}-v{CATALOG_FORMAT_VERSION}.json"))
}

/// The on-disk catalog layout. Index arrays are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub n: usize,
    pub version: u32,
    pub triples: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub r: usize,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K")]
    pub k: Vec<usize>,
}

impl TryFrom<CatalogFile> for TripleCatalog {
    type Error = Error;

    fn try_from(file: CatalogFile) -> Result<Self> {
        if file.version != CATALOG_FORMAT_VERSION {
            return Err(Error::Catalog(format!(
                "unsupported catalog version {} (expected {CATALOG_FORMAT_VERSION})",
                file.version
            )));
        }
        check_capacity(file.n)?;
        let mut triples = Vec::with_capacity(file.triples.len());
        for e in file.triples {
            let t = HornTriple::from_slices(file.n, &e.i, &e.j, &e.k)?;
            if t.r() != e.r || !t.satisfies_dimension_identity() {
                return Err(Error::Catalog(format!("entry {t} is not a Horn triple")));
            }
            triples.push(t);
        }
        Ok(TripleCatalog { n: file.n, triples })
    }
}

/// Process-wide memoized catalog for `n`, enumerated on first use.
pub fn catalog(n: usize) -> Result<Arc<TripleCatalog>> {
    check_capacity(n)?;
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<TripleCatalog>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache.lock().expect("catalog cache poisoned").get(&n) {
        return Ok(Arc::clone(c));
    }
    // enumerate outside the lock; a racing thread computes the same value
    let built = Arc::new(TripleCatalog::enumerate(n)?);
    let mut guard = cache.lock().expect("catalog cache poisoned");
    Ok(Arc::clone(guard.entry(n).or_insert(built)))
}

fn check_capacity(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CATALOG_N {
        Err(Error::Capacity {
            n,
            max: MAX_CATALOG_N,
        })
    } else {
        Ok(())
    }
}

fn triples_of_rank(n: usize, r: usize) -> Vec<HornTriple> {
    if r == 0 {
        return vec![HornTriple::empty(n)];
    }
    let subs = subsets(n, r);
    let cols = (n - r) as u32;
    let weights: Vec<usize> = subs.iter().map(IndexSubset::shift_sum).collect();
    let parts: Vec<Partition> = subs.iter().map(IndexSubset::co_partition).collect();
    let duals: Vec<Partition> = parts
        .iter()
        .map(|p| p.box_complement(r, cols).expect("fits the box"))
        .collect();
    let target = 2 * r * (n - r);
    let mut out = Vec::new();
    for (a, si) in subs.iter().enumerate() {
        for (b, sj) in subs.iter().enumerate() {
            for (c, sk) in subs.iter().enumerate() {
                if weights[a] + weights[b] + weights[c] != target {
                    continue;
                }
                if lr_coefficient(&parts[a], &parts[b], &duals[c]) == 1 {
                    out.push(HornTriple {
                        i: si.clone(),
                        j: sj.clone(),
                        k: sk.clone(),
                    });
                }
            }
        }
    }
    out
}
