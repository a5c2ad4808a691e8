use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;

use super::Permutation;
use crate::actions::Family;
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// Orders up to this size get a full multiplication table.
const PRODUCT_TABLE_LIMIT: usize = 2048;

/// A permutation group given by generators, with its element set
/// materialized on first use (write-once).
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    max_order: usize,
    elements: OnceLock<Elements>,
    family: Option<Family>,
}

pub(crate) struct Elements {
    pub perms: Vec<Permutation>,
    pub index: HashMap<Permutation, u32>,
    pub inverse: Vec<u32>,
    table: OnceLock<Option<Vec<u32>>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(Elements {
                perms: e.perms.clone(),
                index: e.index.clone(),
                inverse: e.inverse.clone(),
                table: OnceLock::new(),
            });
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            max_order: self.max_order,
            elements,
            family: self.family.clone(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.elements.get().map(|e| e.perms.len()))
            .field("family", &self.family)
            .finish()
    }
}

impl PermGroup {
    /// A lazily materialized group; fails only on an empty or mixed-degree generator list.
    pub fn from_generators(generators: Vec<Permutation>, max_order: usize) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Invalid("a group needs at least one generator".into()));
        };
        let degree = first.degree();
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            max_order,
            elements: OnceLock::new(),
            family: None,
        })
    }

    /// Closes `generators` under composition, failing once the order passes `max_order`.
    pub fn closure(generators: Vec<Permutation>, max_order: usize) -> Result<Self> {
        let g = PermGroup::from_generators(generators, max_order)?;
        g.materialize()?;
        Ok(g)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::closure(vec![Permutation::identity(degree)], 1).expect("trivial group")
    }

    /// Builds a materialized group from a complete, closed element list.
    /// A short generating set is picked greedily.
    pub(crate) fn from_closed_elements(degree: usize, perms: Vec<Permutation>, max_order: usize) -> Self {
        debug_assert!(!perms.is_empty());
        let index: HashMap<Permutation, u32> =
            perms.iter().cloned().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let idx = |p: &Permutation| index[p] as usize;
        // Greedy generating set over local indices.
        let mut inside = vec![false; perms.len()];
        let id = idx(&Permutation::identity(degree));
        inside[id] = true;
        let mut members = vec![id];
        let mut gens: Vec<usize> = Vec::new();
        for cand in 0..perms.len() {
            if inside[cand] {
                continue;
            }
            gens.push(cand);
            // re-close from scratch
            inside.iter_mut().for_each(|b| *b = false);
            inside[id] = true;
            members.clear();
            members.push(id);
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for &g in &gens {
                    let y = idx(&perms[g].compose(&perms[x]));
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        debug_assert_eq!(members.len(), perms.len(), "element list is not closed");
        let generators = if gens.is_empty() {
            vec![Permutation::identity(degree)]
        } else {
            gens.iter().map(|&i| perms[i].clone()).collect()
        };
        let inverse = perms.iter().map(|p| index[&p.inverse()]).collect();
        let g = PermGroup {
            degree,
            generators,
            max_order,
            elements: OnceLock::new(),
            family: None,
        };
        let _ = g.elements.set(Elements {
            perms,
            index,
            inverse,
            table: OnceLock::new(),
        });
        g
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.get().is_some()
    }

    pub(crate) fn materialize(&self) -> Result<&Elements> {
        if let Some(e) = self.elements.get() {
            return Ok(e);
        }
        let e = close(self.degree, &self.generators, self.max_order)?;
        Ok(self.elements.get_or_init(|| e))
    }

    /// All elements; index 0 is the identity.
    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(&self.materialize()?.perms)
    }

    pub fn order(&self) -> Result<BigUint> {
        Ok(BigUint::from(self.order_usize()?))
    }

    pub fn order_usize(&self) -> Result<usize> {
        Ok(self.materialize()?.perms.len())
    }

    pub fn index_of(&self, p: &Permutation) -> Result<Option<usize>> {
        Ok(self.materialize()?.index.get(p).map(|&i| i as usize))
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        Ok(p.degree() == self.degree && self.index_of(p)?.is_some())
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Number of conjugacy classes: union-find over the elements, uniting each
    /// `x` with `g x g⁻¹` for every generator `g`.
    pub fn class_count(&self) -> Result<BigUint> {
        Ok(BigUint::from(self.conjugacy_uf()?.set_count()))
    }

    pub fn class_count_usize(&self) -> Result<usize> {
        Ok(self.conjugacy_uf()?.set_count())
    }

    /// Conjugacy classes as element indices; the identity class comes first.
    pub fn conjugacy_classes(&self) -> Result<Vec<Vec<usize>>> {
        Ok(self.conjugacy_uf()?.classes())
    }

    fn conjugacy_uf(&self) -> Result<UnionFind> {
        let e = self.materialize()?;
        let mut uf = UnionFind::new(e.perms.len());
        for g in &self.generators {
            for (i, x) in e.perms.iter().enumerate() {
                let j = e.index[&x.conjugate_by(g)] as usize;
                uf.union(i, j);
            }
        }
        Ok(uf)
    }

    /// Point orbits under the generators, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for i in 0..self.degree {
                uf.union(i, g.image(i));
            }
        }
        uf.classes()
    }

    pub fn orbit_of(&self, p: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|o| o.contains(&p)).unwrap_or_default()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// All point stabilizers trivial, i.e. no nonidentity element fixes a point.
    pub fn is_semiregular(&self) -> Result<bool> {
        Ok(self
            .elements()?
            .iter()
            .all(|x| x.is_identity() || x.fixed_point_count() == 0))
    }

    pub fn point_stabilizer(&self, p: usize) -> Result<PermGroup> {
        if p >= self.degree {
            return Err(Error::Invalid(format!("point {p} outside degree {}", self.degree)));
        }
        Ok(self.subgroup_where(|x| x.image(p) == p))
    }

    /// `{h : c(h(i)) = c(i) for all i}`, the inertia group of the coloring `c`.
    pub fn coloring_stabilizer(&self, coloring: &[u32]) -> Result<PermGroup> {
        if coloring.len() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: coloring.len(),
            });
        }
        self.materialize()?;
        Ok(self.subgroup_where(|x| (0..self.degree).all(|i| coloring[x.image(i)] == coloring[i])))
    }

    /// Subgroup of elements satisfying a predicate that is known to define a subgroup.
    pub(crate) fn subgroup_where(&self, pred: impl Fn(&Permutation) -> bool) -> PermGroup {
        let perms: Vec<Permutation> = self
            .elements()
            .expect("materialized")
            .iter()
            .filter(|x| pred(x))
            .cloned()
            .collect();
        PermGroup::from_closed_elements(self.degree, perms, self.max_order)
    }

    /// The subgroup given by element indices (must be closed).
    pub(crate) fn subgroup_from_indices(&self, members: &[usize]) -> PermGroup {
        let e = self.materialize().expect("materialized");
        let perms = members.iter().map(|&i| e.perms[i].clone()).collect();
        PermGroup::from_closed_elements(self.degree, perms, self.max_order)
    }

    // --- index arithmetic used by the lattice and orbit code ---

    pub(crate) fn product_table(&self) -> Option<&[u32]> {
        let e = self.elements.get()?;
        e.table
            .get_or_init(|| {
                let n = e.perms.len();
                if n > PRODUCT_TABLE_LIMIT {
                    return None;
                }
                let mut t = vec![0u32; n * n];
                for (a, pa) in e.perms.iter().enumerate() {
                    for (b, pb) in e.perms.iter().enumerate() {
                        t[a * n + b] = e.index[&pa.compose(pb)];
                    }
                }
                Some(t)
            })
            .as_deref()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub(crate) fn mul_idx(&self, a: usize, b: usize) -> usize {
        let e = self.elements.get().expect("materialized");
        if let Some(t) = self.product_table() {
            return t[a * e.perms.len() + b] as usize;
        }
        e.index[&e.perms[a].compose(&e.perms[b])] as usize
    }

    pub(crate) fn inv_idx(&self, a: usize) -> usize {
        self.elements.get().expect("materialized").inverse[a] as usize
    }

    /// Closure of the subgroup generated by the given element indices.
    pub(crate) fn generate(&self, gens: &[usize]) -> IndexSet {
        let n = self.elements.get().expect("materialized").perms.len();
        let mut set = IndexSet::new(n);
        set.insert(0);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in gens {
                let y = self.mul_idx(g, x);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Generated subgroup together with a greedy irredundant generating subset of `cands`.
    pub(crate) fn generate_greedy(&self, cands: impl IntoIterator<Item = usize>) -> Subgroup {
        let n = self.elements.get().expect("materialized").perms.len();
        let mut members = IndexSet::new(n);
        members.insert(0);
        let mut gens = Vec::new();
        for c in cands {
            if !members.contains(c) {
                gens.push(c);
                members = self.generate(&gens);
            }
        }
        Subgroup { members, gens }
    }

    /// Class number of a subgroup given by members and generators.
    pub(crate) fn class_count_of(&self, sub: &Subgroup) -> usize {
        let members: Vec<usize> = sub.members.iter().collect();
        let mut local = HashMap::with_capacity(members.len());
        for (i, &m) in members.iter().enumerate() {
            local.insert(m, i);
        }
        let mut uf = UnionFind::new(members.len());
        for &g in &sub.gens {
            let gi = self.inv_idx(g);
            for (i, &x) in members.iter().enumerate() {
                let y = self.mul_idx(self.mul_idx(g, x), gi);
                uf.union(i, local[&y]);
            }
        }
        uf.set_count()
    }
}

fn close(degree: usize, generators: &[Permutation], max_order: usize) -> Result<Elements> {
    let id = Permutation::identity(degree);
    let mut perms = vec![id.clone()];
    let mut index = HashMap::new();
    index.insert(id, 0u32);
    let mut queue = VecDeque::from([0usize]);
    let gens: Vec<&Permutation> = generators.iter().filter(|g| !g.is_identity()).collect();
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = g.compose(&perms[x]);
            if !index.contains_key(&y) {
                if perms.len() >= max_order {
                    return Err(Error::budget("group order", format!("> {max_order}"), max_order));
                }
                index.insert(y.clone(), perms.len() as u32);
                queue.push_back(perms.len());
                perms.push(y);
            }
        }
    }
    let inverse = perms.iter().map(|p| index[&p.inverse()]).collect();
    Ok(Elements {
        perms,
        index,
        inverse,
        table: OnceLock::new(),
    })
}

/// A subgroup of a materialized group, as element indices plus generators.
#[derive(Clone, Debug)]
pub(crate) struct Subgroup {
    pub members: IndexSet,
    pub gens: Vec<usize>,
}

/// Fixed-capacity bitset over element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct IndexSet {
    words: Vec<u64>,
    len: usize,
}

impl IndexSet {
    pub fn new(capacity: usize) -> Self {
        IndexSet {
            words: vec![0; capacity.div_ceil(64)],
            len: 0,
        }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        if self.words[w] & b != 0 {
            return false;
        }
        self.words[w] |= b;
        self.len += 1;
        true
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    fn group(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::closure(gens.iter().map(|s| perm(s, n)).collect(), 1_000_000).unwrap()
    }

    #[test]
    fn closure_orders() {
        assert_eq!(group(&["(1 2)"], 2).order_usize().unwrap(), 2);
        assert_eq!(group(&["(1 2 3)", "(1 2)"], 3).order_usize().unwrap(), 6);
        assert_eq!(group(&["(1 2 3 4)", "(1 3)"], 4).order_usize().unwrap(), 8);
    }

    #[test]
    fn closure_rejects_mixed_degrees_and_budget() {
        let err = PermGroup::closure(vec![perm("(1 2)", 2), perm("(1 2)", 3)], 100).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { expected: 2, found: 3 }));
        let err = PermGroup::closure(vec![perm("(1 2 3 4 5)", 5), perm("(1 2)", 5)], 100).unwrap_err();
        assert!(err.is_budget());
        assert!(PermGroup::closure(vec![], 10).is_err());
    }

    #[test]
    fn class_counts() {
        assert_eq!(PermGroup::trivial(3).class_count_usize().unwrap(), 1);
        assert_eq!(group(&["(1 2 3)", "(1 2)"], 3).class_count_usize().unwrap(), 3);
        assert_eq!(group(&["(1 2 3 4)", "(1 3)"], 4).class_count_usize().unwrap(), 5);
    }

    #[test]
    fn orbits_and_stabilizers() {
        assert_eq!(group(&["(1 2)"], 3).orbits(), vec![vec![0, 1], vec![2]]);
        assert_eq!(group(&["(1 2)(3 4)"], 4).orbits(), vec![vec![0, 1], vec![2, 3]]);
        let s3 = group(&["(1 2 3)", "(1 2)"], 3);
        assert!(s3.is_transitive());
        let st = s3.point_stabilizer(0).unwrap();
        assert_eq!(st.order_usize().unwrap(), 2);
        assert!(st.contains(&perm("(2 3)", 3)).unwrap());
        let c3 = group(&["(1 2 3)"], 3);
        assert_eq!(c3.point_stabilizer(1).unwrap().order_usize().unwrap(), 1);
        let d8 = group(&["(1 2 3 4)", "(1 3)"], 4);
        assert_eq!(d8.point_stabilizer(0).unwrap().order_usize().unwrap(), 2);
        assert!(s3.point_stabilizer(3).is_err());
    }

    #[test]
    fn coloring_stabilizers() {
        let s3 = group(&["(1 2 3)", "(1 2)"], 3);
        let st = s3.coloring_stabilizer(&[0, 0, 1]).unwrap();
        assert_eq!(st.order_usize().unwrap(), 2);
        assert!(st.contains(&perm("(1 2)", 3)).unwrap());
        assert_eq!(s3.coloring_stabilizer(&[4, 4, 4]).unwrap().order_usize().unwrap(), 6);
        let c2 = group(&["(1 2)"], 2);
        assert_eq!(c2.coloring_stabilizer(&[0, 1]).unwrap().order_usize().unwrap(), 1);
        assert!(c2.coloring_stabilizer(&[0]).is_err());
    }

    #[test]
    fn index_arithmetic_matches_composition() {
        let d8 = group(&["(1 2 3 4)", "(1 3)"], 4);
        let el = d8.elements().unwrap().to_vec();
        for a in 0..el.len() {
            assert!(el[a].compose(&el[d8.inv_idx(a)]).is_identity());
            for b in 0..el.len() {
                assert_eq!(el[d8.mul_idx(a, b)], el[a].compose(&el[b]));
            }
        }
        let sub = d8.generate_greedy([1usize, 2, 3]);
        assert!(sub.gens.len() <= 3);
        assert_eq!(d8.class_count_of(&sub), d8.subgroup_from_indices(&sub.members.iter().collect::<Vec<_>>()).class_count_usize().unwrap());
    }
}
