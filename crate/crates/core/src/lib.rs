//! Search for simple (right) automorphic loops inside permutation groups.
//!
//! A loop of order `d` is encoded by its right translations, a set of `d`
//! permutations of `{1, .., d}`. Given a transitive group `G` with point
//! stabilizer `H`, the search finds every loop whose right translations lie
//! in `G` and on which `H` acts by automorphisms.

pub mod catalog;
pub mod error;
pub mod folder;
pub mod isofilter;
pub mod loopcore;
pub mod oracle;
pub mod permkernel;
pub mod search;

pub use catalog::{Catalog, GroupCatalogEntry, Tag};
pub use error::{Error, Result};
pub use loopcore::LoopTable;
pub use permkernel::{PermGroup, Permutation};
