//! Horn triples, Littlewood–Richardson coefficients and the additive Horn
//! inequality system.

mod additive;
mod catalog;
mod lr;
mod partition;
mod subset;

pub use additive::{additive_horn_check, check_nonincreasing};
pub use catalog::{
    cache_path, catalog, CatalogEntry, CatalogFile, HornTriple, TripleCatalog, CACHE_FROM_N,
    CATALOG_FORMAT_VERSION, MAX_CATALOG_N,
};
pub use lr::lr_coefficient;
pub use partition::{partitions_in_box, Partition};
pub use subset::{subsets, IndexSubset};
