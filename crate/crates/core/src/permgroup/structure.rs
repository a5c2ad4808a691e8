use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::group::{IndexSet, Subgroup};
use super::PermGroup;
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub transitive: bool,
    pub semiregular: bool,
    pub primitive: bool,
    pub semiprimitive: bool,
    pub normal_subgroup_count: usize,
}

/// A block system: `block_of[i]` labels the block of point `i`; labels are
/// `0..block_count` in order of first appearance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockSystem {
    pub block_of: Vec<usize>,
    pub block_count: usize,
}

impl BlockSystem {
    fn from_uf(uf: &mut UnionFind, n: usize) -> Self {
        let mut label = vec![usize::MAX; n];
        let mut block_of = vec![0; n];
        let mut next = 0;
        for (i, b) in block_of.iter_mut().enumerate() {
            let r = uf.find(i);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            *b = label[r];
        }
        BlockSystem {
            block_of,
            block_count: next,
        }
    }

    pub fn block_size(&self) -> usize {
        self.block_of.len() / self.block_count
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (i, &b) in self.block_of.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    pub fn is_trivial(&self) -> bool {
        self.block_count == 1 || self.block_count == self.block_of.len()
    }
}

impl PermGroup {
    /// Finest block system in which all of `seeds` share a block.
    pub fn minimal_block_system(&self, seeds: &[usize]) -> BlockSystem {
        let n = self.degree();
        let mut uf = UnionFind::new(n);
        let mut queue = Vec::new();
        if let Some((&first, rest)) = seeds.split_first() {
            for &s in rest {
                if uf.union(first, s) {
                    queue.push((first, s));
                }
            }
        }
        while let Some((a, b)) = queue.pop() {
            for g in self.generators() {
                let (x, y) = (uf.find(g.image(a)), uf.find(g.image(b)));
                if x != y {
                    uf.union(x, y);
                    queue.push((x, y));
                }
            }
        }
        BlockSystem::from_uf(&mut uf, n)
    }

    /// Every nontrivial block system of a transitive group.
    pub fn block_systems(&self) -> Vec<BlockSystem> {
        let n = self.degree();
        if !self.is_transitive() || n < 2 {
            return Vec::new();
        }
        let mut seen: HashSet<BlockSystem> = HashSet::new();
        let mut found: Vec<BlockSystem> = Vec::new();
        for b in 1..n {
            let sys = self.minimal_block_system(&[0, b]);
            if !sys.is_trivial() && seen.insert(sys.clone()) {
                found.push(sys);
            }
        }
        // joins of known systems
        let mut i = 0;
        while i < found.len() {
            for j in 0..i {
                let block_i: Vec<usize> = (0..n).filter(|&p| found[i].block_of[p] == found[i].block_of[0]).collect();
                let mut seeds = block_i;
                seeds.extend((0..n).filter(|&p| found[j].block_of[p] == found[j].block_of[0]));
                let join = self.minimal_block_system(&seeds);
                if !join.is_trivial() && seen.insert(join.clone()) {
                    found.push(join);
                }
            }
            i += 1;
        }
        found.sort_by(|a, b| {
            b.block_size()
                .cmp(&a.block_size())
                .then_with(|| a.blocks()[0].cmp(&b.blocks()[0]))
        });
        found
    }

    /// Transitive with no nontrivial block system.
    pub fn is_primitive(&self) -> bool {
        let n = self.degree();
        self.is_transitive() && (1..n).all(|b| self.minimal_block_system(&[0, b]).block_count == 1)
    }

    /// Normal subgroups (including 1 and the group), as joins of the normal
    /// closures of single conjugacy classes.
    pub fn normal_subgroups(&self, max_order: usize) -> Result<Vec<PermGroup>> {
        Ok(self
            .normal_subgroup_sets(max_order)?
            .iter()
            .map(|s| self.subgroup_from_indices(&s.members.iter().collect::<Vec<_>>()))
            .collect())
    }

    pub(crate) fn normal_subgroup_sets(&self, max_order: usize) -> Result<Vec<Subgroup>> {
        let order = self.order_usize()?;
        if order > max_order {
            return Err(Error::budget("normal subgroup enumeration", order, max_order));
        }
        let classes = self.conjugacy_classes()?;
        let mut seen: HashSet<IndexSet> = HashSet::new();
        let mut normals: Vec<Subgroup> = Vec::new();
        let trivial = self.generate_greedy(std::iter::empty());
        seen.insert(trivial.members.clone());
        normals.push(trivial);
        let mut class_closures: Vec<Subgroup> = Vec::new();
        for class in classes.iter().skip(1) {
            let s = self.generate_greedy(class.iter().copied());
            if seen.insert(s.members.clone()) {
                normals.push(s.clone());
            }
            class_closures.push(s);
        }
        let mut i = 0;
        while i < normals.len() {
            for c in &class_closures {
                if c.members.is_subset(&normals[i].members) {
                    continue;
                }
                let cands: Vec<usize> = normals[i].gens.iter().chain(&c.gens).copied().collect();
                let join = self.generate_greedy(cands);
                if seen.insert(join.members.clone()) {
                    normals.push(join);
                }
            }
            i += 1;
        }
        normals.sort_by_key(|s| (s.members.len(), s.members.iter().collect::<Vec<_>>()));
        Ok(normals)
    }

    /// Transitivity, semiregularity, primitivity and semiprimitivity.
    pub fn structure_classify(&self, max_normal_order: usize) -> Result<StructureReport> {
        let transitive = self.is_transitive();
        let semiregular = self.is_semiregular()?;
        let primitive = transitive && self.is_primitive();
        let normals = self.normal_subgroup_sets(max_normal_order)?;
        let semiprimitive = transitive
            && normals.iter().all(|n| {
                let sub = self.subgroup_from_indices(&n.members.iter().collect::<Vec<_>>());
                sub.is_transitive() || sub.is_semiregular().expect("materialized")
            });
        Ok(StructureReport {
            transitive,
            semiregular,
            primitive,
            semiprimitive,
            normal_subgroup_count: normals.len(),
        })
    }
}
