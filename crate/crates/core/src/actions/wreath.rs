//! The explicit group `C_k ≀ H`, used as a brute-force oracle.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::{PermGroup, Permutation};

/// `(v, h)` with `v ∈ (Z_k)^n` and `h ∈ H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub base: Vec<u32>,
    pub top: Permutation,
}

/// `C_k ≀ H` with multiplication `(v,h)(w,g) = (v + h·w, hg)` where
/// `(h·w)ᵢ = w_{h⁻¹(i)}`.
///
/// Elements are numbered `code(v)·|H| + index(h)`, `code` the base-`k` value of
/// `v` with coordinate 0 most significant.
#[derive(Debug)]
pub struct WreathGroup<'a> {
    k: u32,
    top: &'a PermGroup,
    base_count: usize,
    top_order: usize,
}

impl<'a> WreathGroup<'a> {
    pub fn new(k: u32, top: &'a PermGroup, max_order: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("k must be at least 1".into()));
        }
        let n = top.degree() as u32;
        let base_count = (k as usize)
            .checked_pow(n)
            .filter(|&b| b <= max_order)
            .ok_or_else(|| Error::budget("wreath product order", format!("{k}^{n}·|H|"), max_order))?;
        let top_order = top.order_usize()?;
        if base_count.checked_mul(top_order).is_none_or(|o| o > max_order) {
            return Err(Error::budget(
                "wreath product order",
                BigUint::from(base_count) * top_order,
                max_order,
            ));
        }
        Ok(WreathGroup {
            k,
            top,
            base_count,
            top_order,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.top.degree()
    }

    pub fn top(&self) -> &PermGroup {
        self.top
    }

    pub fn order(&self) -> usize {
        self.base_count * self.top_order
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            base: vec![0; self.degree()],
            top: Permutation::identity(self.degree()),
        }
    }

    pub fn mul(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        let n = self.degree();
        let mut base = a.base.clone();
        // (h·w)_{h(j)} = w_j
        for j in 0..n {
            let i = a.top.image(j);
            base[i] = (base[i] + b.base[j]) % self.k;
        }
        WreathElement {
            base,
            top: a.top.compose(&b.top),
        }
    }

    pub fn inverse(&self, a: &WreathElement) -> WreathElement {
        // (v,h)⁻¹ = (−h⁻¹·v, h⁻¹)
        let inv = a.top.inverse();
        let n = self.degree();
        let mut base = vec![0u32; n];
        for j in 0..n {
            base[inv.image(j)] = (self.k - a.base[j] % self.k) % self.k;
        }
        WreathElement { base, top: inv }
    }

    pub fn encode(&self, a: &WreathElement) -> Result<usize> {
        let h = self
            .top
            .index_of(&a.top)?
            .ok_or_else(|| Error::Invalid("top component not in H".into()))?;
        let v = a.base.iter().fold(0usize, |acc, &x| acc * self.k as usize + x as usize);
        Ok(v * self.top_order + h)
    }

    pub fn decode(&self, code: usize) -> Result<WreathElement> {
        let (mut v, h) = (code / self.top_order, code % self.top_order);
        let mut base = vec![0u32; self.degree()];
        for slot in base.iter_mut().rev() {
            *slot = (v % self.k as usize) as u32;
            v /= self.k as usize;
        }
        Ok(WreathElement {
            base,
            top: self.top.elements()?[h].clone(),
        })
    }

    /// Generators: unit vectors `(eᵢ, 1)` and `(0, g)` for each generator `g` of `H`.
    pub fn generators(&self) -> Vec<WreathElement> {
        let n = self.degree();
        let mut out = Vec::new();
        if self.k > 1 {
            for i in 0..n {
                let mut base = vec![0; n];
                base[i] = 1;
                out.push(WreathElement {
                    base,
                    top: Permutation::identity(n),
                });
            }
        }
        for g in self.top.generators() {
            out.push(WreathElement {
                base: vec![0; n],
                top: g.clone(),
            });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::family::build_family;
    use crate::Budgets;

    #[test]
    fn orders() {
        let b = Budgets::default();
        let c2 = build_family("cyclic:2", &b).unwrap();
        let c3 = build_family("cyclic:3", &b).unwrap();
        assert_eq!(WreathGroup::new(2, &c2, 1_000_000).unwrap().order(), 8);
        assert_eq!(WreathGroup::new(2, &c3, 1_000_000).unwrap().order(), 24);
        assert_eq!(WreathGroup::new(3, &c2, 1_000_000).unwrap().order(), 18);
        assert!(WreathGroup::new(2, &c3, 20).unwrap_err().is_budget());
    }

    #[test]
    fn group_axioms_on_small_case() {
        let b = Budgets::default();
        let s3 = build_family("symmetric:3", &b).unwrap();
        let w = WreathGroup::new(2, &s3, 1_000_000).unwrap();
        let all: Vec<WreathElement> = (0..w.order()).map(|c| w.decode(c).unwrap()).collect();
        for (c, a) in all.iter().enumerate() {
            assert_eq!(w.encode(a).unwrap(), c);
            assert_eq!(w.mul(a, &w.inverse(a)), w.identity());
        }
        for a in all.iter().step_by(5) {
            for b in all.iter().step_by(3) {
                for c in all.iter().step_by(7) {
                    assert_eq!(w.mul(&w.mul(a, b), c), w.mul(a, &w.mul(b, c)));
                }
            }
        }
    }
}
