//! Permutations, permutation groups and their structural tests.

mod group;
mod invariants;
mod perm;
mod structure;

pub use group::PermGroup;
pub(crate) use group::IndexSet;
pub use invariants::NumericInvariants;
pub use perm::{parse_generators, Permutation, MAX_PARSED_DEGREE};
pub use structure::{BlockSystem, StructureReport};
