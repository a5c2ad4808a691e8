//! Exact conjugacy-class counting for wreath products `X ≀ H`.
//!
//! The class number of `X ≀ H` depends on `X` only through `k = k(X)`, so every
//! entry point takes the pair `(k, H)` where `H` is a permutation group of
//! degree `n`. Three independent routes are provided and cross-checked:
//!
//! * [`classcount::clifford_count`]: one representative coloring per `H`-orbit
//!   on `{0..k}^n`, summing the class numbers of the coloring stabilizers;
//! * [`classcount::brute_force_count`]: the explicit group `C_k ≀ H` and its
//!   conjugation orbits;
//! * closed forms for cyclic and symmetric top groups.
//!
//! The [`bounds`] module evaluates the accompanying inequalities exactly where
//! every exponent is an integer.

pub mod actions;
pub mod bounds;
pub mod budget;
pub mod classcount;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod permgroup;
mod union_find;

pub use budget::Budgets;
pub use error::{Error, Result};
pub use permgroup::{PermGroup, Permutation};
