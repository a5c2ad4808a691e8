use std::collections::HashSet;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::group::{IndexSet, Subgroup};
use super::PermGroup;
use crate::error::{Error, Result};

/// Subgroup lattices with more members than this are refused.
const MAX_SUBGROUPS: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericInvariants {
    /// Minimal degree: fewest points moved by a nonidentity element.
    pub mu: usize,
    /// Minimal base size.
    pub b: usize,
    /// Largest cycle count of a nonidentity element (`α(H)·n`).
    pub max_sigma: usize,
    /// Largest class number over all subgroups, when computed.
    #[serde(with = "opt_decimal")]
    pub e: Option<BigUint>,
}

mod opt_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|x| x.to_string()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        v.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

impl PermGroup {
    /// Minimal degree, base size, largest nonidentity cycle count and (optionally) `e`.
    pub fn numeric_invariants(&self, want_e: bool, max_lattice_order: usize) -> Result<NumericInvariants> {
        let els = self.elements()?;
        if els.len() == 1 {
            return Err(Error::Invalid("numeric invariants need a nontrivial group".into()));
        }
        let nonid = els.iter().filter(|x| !x.is_identity());
        let mu = nonid.clone().map(|x| x.support_size()).min().expect("nontrivial");
        let max_sigma = nonid.map(|x| x.cycle_count()).max().expect("nontrivial");
        let b = self.minimal_base()?.len();
        let e = if want_e {
            Some(BigUint::from(self.max_subgroup_class_count(max_lattice_order)?))
        } else {
            None
        };
        Ok(NumericInvariants { mu, b, max_sigma, e })
    }

    /// Lexicographically first smallest base, found by iterative deepening over
    /// increasing point sequences in which every point shrinks the stabilizer.
    pub fn minimal_base(&self) -> Result<Vec<usize>> {
        let all: Vec<u32> = (0..self.order_usize()? as u32).collect();
        let els = self.elements()?;
        let mut path = Vec::new();
        for depth in 0..=self.degree() {
            if self.base_search(els, &all, 0, depth, &mut path) {
                return Ok(path);
            }
        }
        unreachable!("the full point set is always a base")
    }

    fn base_search(
        &self,
        els: &[crate::Permutation],
        stab: &[u32],
        from: usize,
        depth: usize,
        path: &mut Vec<usize>,
    ) -> bool {
        if stab.len() == 1 {
            return true;
        }
        if depth == 0 {
            return false;
        }
        // each further point cuts the stabilizer by at most its orbit length
        let reach = self.degree().checked_pow(depth as u32).unwrap_or(usize::MAX);
        if stab.len() > reach {
            return false;
        }
        for p in from..self.degree() {
            let next: Vec<u32> = stab
                .iter()
                .copied()
                .filter(|&i| els[i as usize].image(p) == p)
                .collect();
            if next.len() == stab.len() {
                continue;
            }
            path.push(p);
            if self.base_search(els, &next, p + 1, depth - 1, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    /// Every subgroup, as joins of cyclic subgroups.
    pub(crate) fn subgroup_lattice(&self, max_order: usize) -> Result<Vec<Subgroup>> {
        let order = self.order_usize()?;
        if order > max_order {
            return Err(Error::budget("subgroup lattice", order, max_order));
        }
        let mut seen: HashSet<IndexSet> = HashSet::new();
        let mut cyclic: Vec<Subgroup> = Vec::new();
        for x in 0..order {
            let s = self.generate_greedy([x]);
            if seen.insert(s.members.clone()) {
                cyclic.push(s);
            }
        }
        let mut all: Vec<Subgroup> = cyclic.clone();
        let mut i = 0;
        while i < all.len() {
            for c in &cyclic {
                if c.members.is_subset(&all[i].members) {
                    continue;
                }
                let cands: Vec<usize> = all[i].gens.iter().chain(&c.gens).copied().collect();
                let join = self.generate_greedy(cands);
                if seen.insert(join.members.clone()) {
                    all.push(join);
                    if all.len() > MAX_SUBGROUPS {
                        return Err(Error::budget("subgroup count", all.len(), MAX_SUBGROUPS));
                    }
                }
            }
            i += 1;
        }
        Ok(all)
    }

    pub fn subgroup_count(&self, max_order: usize) -> Result<usize> {
        Ok(self.subgroup_lattice(max_order)?.len())
    }

    /// Largest class number over all subgroups.
    pub fn max_subgroup_class_count(&self, max_order: usize) -> Result<usize> {
        Ok(self
            .subgroup_lattice(max_order)?
            .iter()
            .map(|s| self.class_count_of(s))
            .max()
            .unwrap_or(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Permutation;

    fn group(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::closure(
            gens.iter().map(|s| Permutation::parse(s, Some(n)).unwrap()).collect(),
            1_000_000,
        )
        .unwrap()
    }

    #[test]
    fn s3_invariants() {
        let inv = group(&["(1 2 3)", "(1 2)"], 3).numeric_invariants(true, 2000).unwrap();
        assert_eq!((inv.mu, inv.b, inv.max_sigma), (2, 2, 2));
        assert_eq!(inv.e, Some(BigUint::from(3u32)));
    }

    #[test]
    fn cyclic_invariants() {
        let inv = group(&["(1 2 3)"], 3).numeric_invariants(true, 2000).unwrap();
        assert_eq!((inv.mu, inv.b, inv.max_sigma), (3, 1, 1));
        assert_eq!(inv.e, Some(BigUint::from(3u32)));
        let inv = group(&["(1 2)"], 2).numeric_invariants(true, 2000).unwrap();
        assert_eq!((inv.mu, inv.b, inv.max_sigma), (2, 1, 1));
        assert_eq!(inv.e, Some(BigUint::from(2u32)));
    }

    #[test]
    fn lattice_sizes() {
        // S3: 1, three C2, C3, S3
        assert_eq!(group(&["(1 2 3)", "(1 2)"], 3).subgroup_count(2000).unwrap(), 6);
        // S4 has 30 subgroups
        assert_eq!(group(&["(1 2 3 4)", "(1 2)"], 4).subgroup_count(2000).unwrap(), 30);
        assert!(group(&["(1 2 3 4)", "(1 2)"], 4).subgroup_count(10).unwrap_err().is_budget());
    }

    #[test]
    fn base_of_s4_and_trivial_rejected() {
        assert_eq!(group(&["(1 2 3 4)", "(1 2)"], 4).minimal_base().unwrap(), vec![0, 1, 2]);
        assert!(PermGroup::trivial(3).numeric_invariants(false, 10).is_err());
    }
}
