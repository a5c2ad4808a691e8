//! The action of `S_m` on `ℓ`-element subsets, indexed in colex order.

use crate::error::{Error, Result};
use crate::Permutation;

fn binomial_u64(n: usize, k: usize) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(m, ℓ)` checked against a degree budget.
pub fn subset_count(m: usize, l: usize, max_degree: usize) -> Result<usize> {
    match binomial_u64(m, l) {
        Some(c) if c <= max_degree as u64 => Ok(c as usize),
        Some(c) => Err(Error::budget("lifted degree", c, max_degree)),
        None => Err(Error::budget("lifted degree", format!("C({m},{l})"), max_degree)),
    }
}

/// Colex ranking of the `ℓ`-subsets of `{0..m}`.
///
/// The subset `{c₁ < … < c_ℓ}` has rank `Σ C(cᵢ, i)`.
#[derive(Debug, Clone)]
pub struct SubsetIndex {
    m: usize,
    l: usize,
    /// `binom[c][i] = C(c, i)` for `c ≤ m`, `i ≤ ℓ`.
    binom: Vec<Vec<u64>>,
    /// Flattened subsets, `l` points each, in rank order.
    subsets: Vec<u32>,
}

impl SubsetIndex {
    pub fn new(m: usize, l: usize, max_degree: usize) -> Result<Self> {
        if l == 0 || l > m {
            return Err(Error::params("subsets", format!("need 1 ≤ ℓ ≤ m, got m={m}, ℓ={l}")));
        }
        let count = subset_count(m, l, max_degree)?;
        let binom: Vec<Vec<u64>> = (0..=m)
            .map(|c| (0..=l).map(|i| binomial_u64(c, i).expect("bounded by C(m,l)")).collect())
            .collect();
        let mut subsets = Vec::with_capacity(count * l);
        let mut current: Vec<u32> = (0..l as u32).collect();
        for _ in 0..count {
            subsets.extend_from_slice(&current);
            // colex successor: bump the lowest position that can move
            let mut i = 0;
            while i < l {
                let limit = if i + 1 < l { current[i + 1] } else { m as u32 };
                if current[i] + 1 < limit {
                    current[i] += 1;
                    for (j, c) in current.iter_mut().enumerate().take(i) {
                        *c = j as u32;
                    }
                    break;
                }
                i += 1;
            }
        }
        Ok(SubsetIndex { m, l, binom, subsets })
    }

    pub fn len(&self) -> usize {
        self.subsets.len() / self.l
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subset(&self, rank: usize) -> &[u32] {
        &self.subsets[rank * self.l..(rank + 1) * self.l]
    }

    /// Rank of a sorted subset.
    pub fn rank(&self, sorted: &[u32]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.binom[c as usize][i + 1])
            .sum::<u64>() as usize
    }

    /// The permutation of subset ranks induced by `p ∈ S_m`.
    pub fn lift(&self, p: &Permutation) -> Result<Permutation> {
        if p.degree() != self.m {
            return Err(Error::DegreeMismatch {
                expected: self.m,
                found: p.degree(),
            });
        }
        let mut buf = vec![0u32; self.l];
        let images = (0..self.len())
            .map(|r| {
                for (b, &x) in buf.iter_mut().zip(self.subset(r)) {
                    *b = p.image(x as usize) as u32;
                }
                buf.sort_unstable();
                self.rank(&buf) as u32
            })
            .collect();
        Ok(Permutation::from_images_unchecked(images))
    }
}

/// The permutation of the colex-ordered `ℓ`-subsets induced by `p`.
pub fn subsets_action_lift(p: &Permutation, l: usize, max_degree: usize) -> Result<Permutation> {
    SubsetIndex::new(p.degree(), l, max_degree)?.lift(p)
}

/// Cycle count of `p` on `ℓ`-subsets.
pub fn sigma_prime(p: &Permutation, l: usize, max_degree: usize) -> Result<usize> {
    Ok(subsets_action_lift(p, l, max_degree)?.cycle_count())
}

/// Image of a point-set bitmask under a permutation, via 4-bit chunk tables.
struct MaskImage {
    tables: Vec<[u64; 16]>,
}

impl MaskImage {
    fn new(p: &Permutation) -> Self {
        let m = p.degree();
        debug_assert!(m <= 64);
        let tables = (0..m.div_ceil(4))
            .map(|c| {
                let mut t = [0u64; 16];
                for (bits, slot) in t.iter_mut().enumerate() {
                    for j in 0..4 {
                        let x = 4 * c + j;
                        if bits >> j & 1 == 1 && x < m {
                            *slot |= 1u64 << p.image(x);
                        }
                    }
                }
                t
            })
            .collect();
        MaskImage { tables }
    }

    #[inline]
    fn apply(&self, mask: u64) -> u64 {
        let mut out = 0;
        for (c, t) in self.tables.iter().enumerate() {
            out |= t[((mask >> (4 * c)) & 15) as usize];
        }
        out
    }
}

/// Number of `ℓ`-subsets `S` with `p(S) = S`, by checking every subset.
pub fn fix_subsets_direct(p: &Permutation, l: usize, max_degree: usize) -> Result<u64> {
    let m = p.degree();
    if l == 0 || l > m {
        return Err(Error::params("fix_subsets", format!("need 1 ≤ ℓ ≤ m, got m={m}, ℓ={l}")));
    }
    let count = subset_count(m, l, max_degree)?;
    if m <= 64 {
        let img = MaskImage::new(p);
        let mut fixed = 0;
        let mut s: u64 = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
        for _ in 0..count {
            if img.apply(s) == s {
                fixed += 1;
            }
            // Gosper's hack: next mask with the same popcount
            let c = s & s.wrapping_neg();
            let r = s.wrapping_add(c);
            if r == 0 {
                break;
            }
            s = (((r ^ s) >> 2) / c) | r;
        }
        return Ok(fixed);
    }
    let lifted = SubsetIndex::new(m, l, max_degree)?.lift(p)?;
    Ok(lifted.fixed_point_count() as u64)
}

/// Fixed-subset counts for every size at once: entry `ℓ` counts fixed `ℓ`-subsets.
/// Sweeps all `2^m` subsets, so `m ≤ 24`.
pub fn fixed_subset_profile(p: &Permutation) -> Result<Vec<u64>> {
    let m = p.degree();
    if m > 24 {
        return Err(Error::budget("subset sweep degree", m, 24));
    }
    let img = MaskImage::new(p);
    let mut out = vec![0u64; m + 1];
    for s in 0..(1u64 << m) {
        if img.apply(s) == s {
            out[s.count_ones() as usize] += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: usize = 100_000;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn colex_order_and_rank() {
        let idx = SubsetIndex::new(4, 2, BUDGET).unwrap();
        let subsets: Vec<Vec<u32>> = (0..idx.len()).map(|r| idx.subset(r).to_vec()).collect();
        assert_eq!(
            subsets,
            vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        for (r, s) in subsets.iter().enumerate() {
            assert_eq!(idx.rank(s), r);
        }
    }

    #[test]
    fn transposition_on_pairs() {
        let idx = SubsetIndex::new(4, 2, BUDGET).unwrap();
        let lifted = idx.lift(&perm("(1 2)", 4)).unwrap();
        let r = |s: &[u32]| idx.rank(s);
        assert_eq!(lifted.image(r(&[0, 1])), r(&[0, 1]));
        assert_eq!(lifted.image(r(&[2, 3])), r(&[2, 3]));
        assert_eq!(lifted.image(r(&[0, 2])), r(&[1, 2]));
        assert_eq!(lifted.image(r(&[0, 3])), r(&[1, 3]));
        assert_eq!(lifted.cycle_count(), 4);
    }

    #[test]
    fn five_cycle_on_pairs() {
        let lifted = subsets_action_lift(&perm("(1 2 3 4 5)", 5), 2, BUDGET).unwrap();
        assert_eq!(lifted.cycle_lengths(), vec![5, 5]);
        assert_eq!(sigma_prime(&perm("(1 2 3 4 5)", 5), 2, BUDGET).unwrap(), 2);
        assert_eq!(sigma_prime(&Permutation::identity(4), 2, BUDGET).unwrap(), 6);
        assert!(subsets_action_lift(&Permutation::identity(6), 3, BUDGET).unwrap().is_identity());
    }

    #[test]
    fn direct_fixed_counts() {
        assert_eq!(fix_subsets_direct(&perm("(1 2)", 4), 2, BUDGET).unwrap(), 2);
        assert_eq!(fix_subsets_direct(&Permutation::identity(4), 2, BUDGET).unwrap(), 6);
        assert_eq!(fix_subsets_direct(&perm("(1 2 3)", 3), 1, BUDGET).unwrap(), 0);
        assert_eq!(fix_subsets_direct(&perm("(1 2 3)", 3), 3, BUDGET).unwrap(), 1);
        assert_eq!(fixed_subset_profile(&perm("(1 2)", 4)).unwrap(), vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn large_degree_path_agrees_with_lift() {
        let p = Permutation::from_images((0..70).map(|i| if i < 2 { 1 - i } else { i })).unwrap();
        // (0 1) on 70 points: fixed pairs are {0,1} and pairs avoiding both
        assert_eq!(fix_subsets_direct(&p, 2, BUDGET).unwrap(), 1 + 68 * 67 / 2);
    }

    #[test]
    fn budget_and_parameter_errors() {
        assert!(subsets_action_lift(&Permutation::identity(30), 15, BUDGET).unwrap_err().is_budget());
        assert!(subsets_action_lift(&Permutation::identity(3), 0, BUDGET).is_err());
        assert!(fix_subsets_direct(&Permutation::identity(3), 4, BUDGET).is_err());
    }
}
