use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::actions::{sigma, sigma_prime, Family};
use crate::combinatorics::{factorial, partition_enum};
use crate::error::{Error, Result};
use crate::PermGroup;

/// `(1/|H|) Σ_h k^{σ(h)}`, summed per conjugacy class of `H`. For `S_m` in
/// natural or `ℓ`-subset action the classes come from the partitions of `m`,
/// so the group is never materialized.
pub fn burnside_orbit_count(h: &PermGroup, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let by_partition = |m: usize, l: Option<usize>| -> Result<BigUint> {
        let terms = partition_enum(m)
            .into_iter()
            .map(|p| {
                let s = match l {
                    None => p.len(),
                    // the group was built, so the lifted degree is already within budget
                    Some(l) => sigma_prime(&p.cycle_type().representative(), l, usize::MAX)?,
                };
                Ok((p.class_size(), s))
            })
            .collect::<Result<Vec<_>>>()?;
        divide_exact(weighted_power_sum(terms, k), &factorial(m as u64))
    };
    match h.family() {
        Some(&Family::Symmetric(m)) => return by_partition(m, None),
        Some(&Family::Subsets { m, l }) => return by_partition(m, Some(l)),
        _ => {}
    }
    let els = h.elements()?;
    let terms = h
        .conjugacy_classes()?
        .into_iter()
        .map(|class| (BigUint::from(class.len()), sigma(&els[class[0]])));
    divide_exact(weighted_power_sum(terms, k), &BigUint::from(els.len()))
}

/// `Σ weight · k^{exponent}`
pub fn weighted_power_sum(terms: impl IntoIterator<Item = (BigUint, usize)>, k: u32) -> BigUint {
    let base = BigUint::from(k);
    terms
        .into_iter()
        .fold(BigUint::zero(), |acc, (w, e)| acc + w * Pow::pow(&base, e))
}

/// `sum / order`, refusing a nonzero remainder.
pub fn divide_exact(sum: BigUint, order: &BigUint) -> Result<BigUint> {
    let (q, r) = sum.div_rem(order);
    if !r.is_zero() {
        return Err(Error::DivisibilityViolation {
            sum: sum.to_string(),
            order: order.to_string(),
        });
    }
    Ok(q)
}
