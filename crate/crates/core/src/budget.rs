use serde::{Deserialize, Serialize};

/// Resource limits shared by every enumeration in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest group order materialized by closure (and largest `C_k ≀ H` built by brute force).
    pub max_group_order: usize,
    /// Largest coloring space `k^n` swept by the orbit enumerator.
    pub max_coloring_space: u64,
    /// Largest degree of a lifted action (subset or product action).
    pub max_lift_degree: usize,
    /// Largest `|H|` for which the full subgroup lattice is enumerated.
    pub max_lattice_order: usize,
    /// Largest `|H|` for which normal subgroups are enumerated.
    pub max_normal_order: usize,
}

/// Colorings above this count are enumerated by a lex-minimality scan instead
/// of a visited table.
pub const VISITED_TABLE_LIMIT: u64 = 1 << 27;

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_group_order: 1_000_000,
            max_coloring_space: VISITED_TABLE_LIMIT,
            max_lift_degree: 100_000,
            max_lattice_order: 2000,
            max_normal_order: 100_000,
        }
    }
}

impl Budgets {
    /// Defaults overridden by `WREATHCOUNT_MAX_ORDER`, `WREATHCOUNT_MAX_COLORINGS`,
    /// `WREATHCOUNT_MAX_LIFT`, `WREATHCOUNT_MAX_LATTICE` and `WREATHCOUNT_MAX_NORMAL`.
    pub fn from_env() -> Self {
        fn var<T: std::str::FromStr>(name: &str) -> Option<T> {
            std::env::var(name).ok()?.trim().parse().ok()
        }
        let mut b = Budgets::default();
        if let Some(v) = var("WREATHCOUNT_MAX_ORDER") {
            b.max_group_order = v;
        }
        if let Some(v) = var("WREATHCOUNT_MAX_COLORINGS") {
            b.max_coloring_space = v;
        }
        if let Some(v) = var("WREATHCOUNT_MAX_LIFT") {
            b.max_lift_degree = v;
        }
        if let Some(v) = var("WREATHCOUNT_MAX_LATTICE") {
            b.max_lattice_order = v;
        }
        if let Some(v) = var("WREATHCOUNT_MAX_NORMAL") {
            b.max_normal_order = v;
        }
        b
    }
}
