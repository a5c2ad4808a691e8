//! Exact integer combinatorics: binomials, partitions, Stirling numbers of the
//! first kind, weak compositions and the fixed-subset count.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::actions::CycleType;
use crate::error::{Error, Result};

/// Largest subset size accepted by [`fix_subsets_formula`].
pub const MAX_FORMULA_SUBSET_SIZE: usize = 64;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// A partition of an integer as weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts, `l(λ)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(&self.parts)
    }

    /// Size of the conjugacy class of `S_n` with this cycle type: `n! / Π iᵃⁱ aᵢ!`.
    pub fn class_size(&self) -> BigUint {
        let mut z = BigUint::one();
        let max = self.parts.first().copied().unwrap_or(0);
        for i in 1..=max {
            let a = self.multiplicity(i) as u64;
            z *= BigUint::from(i).pow(a as u32) * factorial(a);
        }
        factorial(self.size() as u64) / z
    }
}

/// `p(n)` by Euler's pentagonal recurrence.
pub fn partition_count(n: usize) -> BigUint {
    partition_counts_upto(n).pop().expect("nonempty")
}

/// `[p(0), …, p(n)]`
pub fn partition_counts_upto(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigUint> = Vec::with_capacity(n + 1);
    p.push(BigUint::one());
    for m in 1..=n {
        let (mut plus, mut minus) = (BigUint::zero(), BigUint::zero());
        for j in 1.. {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > m {
                break;
            }
            let sign_plus = j % 2 == 1;
            let mut add = |g: usize| {
                if g <= m {
                    if sign_plus {
                        plus += &p[m - g];
                    } else {
                        minus += &p[m - g];
                    }
                }
            };
            add(g1);
            add(j * (3 * j + 1) / 2);
        }
        p.push(plus - minus);
    }
    p
}

/// All partitions of `n` in reverse lexicographic order (`(n)` first, `(1,…,1)` last).
pub fn partition_enum(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            current.push(part);
            rec(rest - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Unsigned Stirling number of the first kind: permutations of `m` points
/// with exactly `j` cycles.
pub fn stirling_first(j: usize, m: usize) -> BigUint {
    if j > m {
        return BigUint::zero();
    }
    stirling_first_row(m).swap_remove(j)
}

/// `[S(0,m), …, S(m,m)]` via `S(j,m) = S(j−1,m−1) + (m−1)·S(j,m−1)`.
pub fn stirling_first_row(m: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for n in 1..=m {
        let mut next = vec![BigUint::zero(); n + 1];
        for j in 1..=n {
            let mut v = row[j - 1].clone();
            if j < n {
                v += &row[j] * (n - 1);
            }
            next[j] = v;
        }
        row = next;
    }
    row
}

/// Number of `k`-tuples of nonnegative integers summing to `n`: `C(n+k−1, k−1)`.
pub fn weak_composition_count(n: u64, k: u64) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Invalid("weak compositions need k ≥ 1".into()));
    }
    Ok(binomial(n + k - 1, k - 1))
}

/// Number of `ℓ`-subsets fixed by a permutation of cycle type `α`:
/// `Σ_{λ ⊢ ℓ} Π_i C(αᵢ, λᵢ)` with `λᵢ` the number of parts of `λ` equal to `i`.
///
/// Partitions whose term vanishes (some `λᵢ > αᵢ`) are skipped during enumeration.
pub fn fix_subsets_formula(ct: &CycleType, l: usize) -> Result<BigUint> {
    if l == 0 {
        return Err(Error::Invalid("subset size must be at least 1".into()));
    }
    if l > MAX_FORMULA_SUBSET_SIZE {
        return Err(Error::budget("partition sum size ℓ", l, MAX_FORMULA_SUBSET_SIZE));
    }
    fn rec(ct: &CycleType, rest: usize, part: usize, acc: &BigUint, total: &mut BigUint) {
        if rest == 0 {
            *total += acc;
            return;
        }
        if part == 0 {
            return;
        }
        let avail = ct.count(part);
        for mult in 0..=avail.min(rest / part) {
            let term = acc * binomial(avail as u64, mult as u64);
            rec(ct, rest - mult * part, part - 1, &term, total);
        }
    }
    let mut total = BigUint::zero();
    rec(ct, l, l, &BigUint::one(), &mut total);
    Ok(total)
}

/// Number of `k`-tuples of partitions with total size `n`, i.e.
/// `Σ_{x₁+…+x_k = n} Π p(xᵢ)`, evaluated as a `k`-fold convolution.
pub fn tuples_of_partitions_count(k: usize, n: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Invalid("need k ≥ 1".into()));
    }
    let p = partition_counts_upto(n);
    let mut acc = p.clone();
    for _ in 1..k {
        let mut next = vec![BigUint::zero(); n + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in p.iter().enumerate().take(n + 1 - i) {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    Ok(acc.swap_remove(n))
}
