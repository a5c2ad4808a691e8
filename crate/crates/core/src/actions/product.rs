//! Product action of `S_m ≀ S_t` on `Ω^t`, `Ω` the `ℓ`-subsets of `{0..m}`.

use super::subsets::{subset_count, SubsetIndex};
use crate::error::{Error, Result};
use crate::Permutation;

/// `(x₁,…,x_t)τ` with `xᵢ ∈ S_m` and `τ ∈ S_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductActionElement {
    pub coords: Vec<Permutation>,
    pub top: Permutation,
}

/// `|Ω|^t` checked against the lifted-degree budget.
pub fn product_degree(m: usize, l: usize, t: usize, max_degree: usize) -> Result<usize> {
    let base = subset_count(m, l, max_degree)?;
    let mut n: usize = 1;
    for _ in 0..t {
        n = n
            .checked_mul(base)
            .filter(|&v| v <= max_degree)
            .ok_or_else(|| Error::budget("product action degree", format!("C({m},{l})^{t}"), max_degree))?;
    }
    Ok(n)
}

impl ProductActionElement {
    pub fn new(coords: Vec<Permutation>, top: Permutation) -> Result<Self> {
        if coords.len() != top.degree() {
            return Err(Error::DegreeMismatch {
                expected: top.degree(),
                found: coords.len(),
            });
        }
        if let Some(first) = coords.first() {
            if let Some(bad) = coords.iter().find(|c| c.degree() != first.degree()) {
                return Err(Error::DegreeMismatch {
                    expected: first.degree(),
                    found: bad.degree(),
                });
            }
        }
        Ok(ProductActionElement { coords, top })
    }

    /// The permutation of `Ω^t` (points in mixed radix, coordinate 0 least
    /// significant): coordinate `i` is moved by `xᵢ` and then to position `τ(i)`.
    pub fn build(&self, index: &SubsetIndex, max_degree: usize) -> Result<Permutation> {
        let t = self.top.degree();
        let base = index.len();
        let n = product_degree_from(base, t, max_degree)?;
        let lifts: Vec<Permutation> = self.coords.iter().map(|c| index.lift(c)).collect::<Result<_>>()?;
        let mut digits = vec![0usize; t];
        let mut images = Vec::with_capacity(n);
        for point in 0..n {
            let mut rest = point;
            for d in digits.iter_mut() {
                *d = rest % base;
                rest /= base;
            }
            let mut image = vec![0usize; t];
            for i in 0..t {
                image[self.top.image(i)] = lifts[i].image(digits[i]);
            }
            let code = image.iter().rev().fold(0usize, |acc, &d| acc * base + d);
            images.push(code as u32);
        }
        Ok(Permutation::from_images_unchecked(images))
    }

    /// Number of cycles on `Ω^t`.
    pub fn gamma(&self, index: &SubsetIndex, max_degree: usize) -> Result<usize> {
        Ok(self.build(index, max_degree)?.cycle_count())
    }
}

fn product_degree_from(base: usize, t: usize, max_degree: usize) -> Result<usize> {
    (0..t)
        .try_fold(1usize, |acc, _| acc.checked_mul(base).filter(|&v| v <= max_degree))
        .ok_or_else(|| Error::budget("product action degree", format!("{base}^{t}"), max_degree))
}

/// Convenience wrapper: builds the product-action permutation for `(coords, top)`.
pub fn product_action_build(
    coords: Vec<Permutation>,
    top: Permutation,
    m: usize,
    l: usize,
    max_degree: usize,
) -> Result<Permutation> {
    let index = SubsetIndex::new(m, l, max_degree)?;
    ProductActionElement::new(coords, top)?.build(&index, max_degree)
}

pub fn gamma(coords: Vec<Permutation>, top: Permutation, m: usize, l: usize, max_degree: usize) -> Result<usize> {
    Ok(product_action_build(coords, top, m, l, max_degree)?.cycle_count())
}
