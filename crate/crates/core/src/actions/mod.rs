//! Induced actions (subsets, product action, block quotients), cycle
//! statistics, the explicit wreath product, and the named group families.

mod blocks;
mod cycles;
pub mod family;
mod product;
mod subsets;
mod wreath;

pub use blocks::{block_decomposition, decompose_along, BlockDecomposition, Decomposition};
pub use cycles::{cycle_type, sigma, CycleType};
pub use family::{build_family, Family};
pub use product::{gamma, product_action_build, product_degree, ProductActionElement};
pub use subsets::{
    fix_subsets_direct, fixed_subset_profile, sigma_prime, subset_count, subsets_action_lift, SubsetIndex,
};
pub use wreath::{WreathElement, WreathGroup};
