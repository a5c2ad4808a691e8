//! Conjugacy classes of the explicit group `C_k ≀ H`.

use num_bigint::BigUint;

use crate::actions::WreathGroup;
use crate::error::Result;
use crate::union_find::UnionFind;
use crate::{Budgets, PermGroup};

/// Builds `C_k ≀ H` within the group-order budget.
pub fn build_wreath_group<'a>(k: u32, h: &'a PermGroup, budgets: &Budgets) -> Result<WreathGroup<'a>> {
    WreathGroup::new(k, h, budgets.max_group_order)
}

/// Class number of `C_k ≀ H` by union-find over all `k^n·|H|` elements,
/// joining `x` with `g x g⁻¹` for every generator `g`.
///
/// Conjugation is done on element codes: by `(eᵢ, 1)` it sends `(v, h)` to
/// `(v + eᵢ − e_{h(i)}, h)`; by `(0, g)` it sends `(v, h)` to `(g·v, g h g⁻¹)`.
pub fn brute_force_class_count(k: u32, h: &PermGroup, budgets: &Budgets) -> Result<BigUint> {
    let w = build_wreath_group(k, h, budgets)?;
    let els = h.elements()?;
    let order_h = els.len();
    let n = h.degree();
    let k = k as usize;
    let mut weights = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        weights[i] = weights[i + 1] * k;
    }
    let tops: Vec<(Vec<usize>, &crate::Permutation)> = h
        .generators()
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| {
            let table = els
                .iter()
                .map(|x| h.index_of(&x.conjugate_by(g)).map(|i| i.expect("closed")))
                .collect::<Result<Vec<_>>>()?;
            Ok((table, g))
        })
        .collect::<Result<_>>()?;

    let mut uf = UnionFind::new(w.order());
    let mut digits = vec![0usize; n];
    let mut moved = vec![0usize; n];
    for code in 0..w.order() {
        let (v, t) = (code / order_h, code % order_h);
        let mut rest = v;
        for d in digits.iter_mut().rev() {
            *d = rest % k;
            rest /= k;
        }
        let top = &els[t];
        if k > 1 {
            for i in 0..n {
                let j = top.image(i);
                if i == j {
                    continue;
                }
                let up = (digits[i] + 1) % k;
                let down = (digits[j] + k - 1) % k;
                let nv = v + up * weights[i] + down * weights[j] - digits[i] * weights[i] - digits[j] * weights[j];
                uf.union(code, nv * order_h + t);
            }
        }
        for (table, g) in &tops {
            for (j, &d) in digits.iter().enumerate() {
                moved[g.image(j)] = d;
            }
            let nv = moved.iter().fold(0usize, |acc, &d| acc * k + d);
            uf.union(code, nv * order_h + table[t]);
        }
    }
    Ok(BigUint::from(uf.set_count()))
}
