//! Permutations and permutation groups.

mod centralizer;
mod chain;
mod classes;
mod group;
mod perm;
mod random;

pub use chain::{ChainElements, ChainLevel, StabChain};
pub use classes::{ClassSize, ConjugacyClassResult, MinClassSize};
pub use group::{orbit, orbits, PermGroup};
pub use perm::Permutation;
