//! Bounds for `S_m` on `ℓ`-subsets and for its product actions.

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    int_rational, log2_big, log2_verdict, pow_big, BoundReport, Inputs, Mode, Quantity, Verdict,
};
use crate::actions::{sigma_prime, subset_count, CycleType, Family, ProductActionElement, SubsetIndex};
use crate::classcount::{auto_count, divide_exact, weighted_power_sum};
use crate::combinatorics::{binomial, factorial, fix_subsets_formula, partition_count, partition_enum, Partition};
use crate::error::{Error, Result};
use crate::{Budgets, Permutation};

/// Largest number of class tuples summed by [`lem15_check`].
const MAX_CLASS_TUPLES: usize = 1_000_000;

/// Partitions of `m` enumerated exhaustively by [`lem100_probe`]; beyond this it samples.
const MAX_EXHAUSTIVE_PARTITIONS: usize = 200_000;

fn check_subset_params(m: usize, l: usize) -> Result<()> {
    if l == 0 || 2 * l >= m {
        return Err(Error::params("subsets", format!("need 1 ≤ ℓ < m/2, got m={m}, ℓ={l}")));
    }
    Ok(())
}

/// `(m, ℓ, t)` when the family is `S_m` or `A_m` on `ℓ`-subsets or their product
/// action with `m ≥ 5` and `1 ≤ ℓ < m/2`. The natural actions of `S_n` and
/// `A_n` (`n ≥ 5`) match as `(n, 1, 1)`.
pub fn large_base_match(family: &Family) -> Option<(usize, usize, usize)> {
    let (m, l, t) = match *family {
        Family::Subsets { m, l } | Family::SubsetsAlt { m, l } => (m, l, 1),
        Family::Product { m, l, t } => (m, l, t),
        Family::Symmetric(n) | Family::Alternating(n) => (n, 1, 1),
        _ => return None,
    };
    (m >= 5 && l >= 1 && 2 * l < m && t >= 1).then_some((m, l, t))
}

/// Orbits of `S_m` on `k`-colorings of the `ℓ`-subsets, by Burnside over the
/// classes of `S_m` with `σ′` evaluated on one representative per class.
pub fn subset_orbit_count(m: usize, l: usize, k: u32, budgets: &Budgets) -> Result<BigUint> {
    subset_count(m, l, budgets.max_lift_degree)?;
    let terms = partition_enum(m)
        .iter()
        .map(|p| Ok((p.class_size(), sigma_prime(&p.cycle_type().representative(), l, budgets.max_lift_degree)?)))
        .collect::<Result<Vec<_>>>()?;
    divide_exact(weighted_power_sum(terms, k), &factorial(m as u64))
}

/// `σ′(π) ≤ (C(m,ℓ) + |fix π|)/2` over all classes of `S_m`, reported as
/// `max(2σ′ − fix) ≤ C(m,ℓ)`.
pub fn e14_check(m: usize, l: usize, budgets: &Budgets) -> Result<BoundReport> {
    let c = subset_count(m, l, budgets.max_lift_degree)?;
    let mut worst = 0usize;
    for p in partition_enum(m) {
        let rep = p.cycle_type().representative();
        let lifted = crate::actions::subsets_action_lift(&rep, l, budgets.max_lift_degree)?;
        worst = worst.max(2 * lifted.cycle_count() - lifted.fixed_point_count());
    }
    Ok(BoundReport::new(
        "e14",
        Quantity::Exact(worst.to_string()),
        Quantity::Exact(c.to_string()),
        Verdict::from_bool(worst <= c),
        Mode::Exact,
        Inputs {
            m: Some(m),
            l: Some(l),
            ..Inputs::default()
        },
    )
    .with_note("max over classes of 2*sigma' - fix, compared with C(m,l)"))
}

/// `n(S_m, B) < 2·max{k^{(7/8)C}, (m!)^{−0.58}·k^C}` with `C = C(m,ℓ)`,
/// compared in the base-2 logarithmic domain.
pub fn prop11_bound(m: usize, l: usize, k: u32, budgets: &Budgets) -> Result<BoundReport> {
    check_subset_params(m, l)?;
    let c = binomial(m as u64, l as u64);
    let c = c.to_string().parse::<f64>().expect("finite");
    let lk = (k as f64).log2();
    let a = 0.875 * c * lk;
    let b = -0.58 * log2_big(&factorial(m as u64)) + c * lk;
    let rhs = 1.0 + a.max(b);
    let inputs = Inputs {
        k: Some(k),
        m: Some(m),
        l: Some(l),
        ..Inputs::default()
    };
    let (lhs, holds) = match subset_orbit_count(m, l, k, budgets) {
        Ok(v) => {
            let lv = log2_big(&v);
            (Quantity::int(&v), log2_verdict(lv, rhs))
        }
        Err(err) if err.is_budget() => (Quantity::Missing, Verdict::Unevaluated),
        Err(err) => return Err(err),
    };
    Ok(BoundReport::new("prop11", lhs, Quantity::from_log2(rhs), holds, Mode::Float, inputs)
        .asymptotic()
        .with_term("log2 k^(7C/8)", Quantity::Float(a))
        .with_term("log2 (m!)^-0.58 k^C", Quantity::Float(b)))
}

/// `k(G) < 5^{mt}(2^t·n(S_m,B₁)^t + k^{2n/3})` with `n = C(m,ℓ)^t`; exact when `3 | n`.
/// The left side is the class number of `S_m ≀ S_t` in product action, when feasible.
pub fn prop13_bound(m: usize, l: usize, t: usize, k: u32, budgets: &Budgets) -> Result<BoundReport> {
    check_subset_params(m, l)?;
    if t == 0 {
        return Err(Error::params("product", "t must be at least 1"));
    }
    let c = subset_count(m, l, usize::MAX)?;
    let n_big: BigUint = Pow::pow(&BigUint::from(c), t);
    let n1 = subset_orbit_count(m, l, k, budgets)?;
    let n_term: BigUint = Pow::pow(&n1, t);
    let five = pow_big(5, m * t);
    let inputs = Inputs {
        k: Some(k),
        n: usize::try_from(&n_big).ok(),
        m: Some(m),
        l: Some(l),
        t: Some(t),
        ..Inputs::default()
    };
    let orbit_part = pow_big(2, t) * &n_term;
    let exact = (&n_big % 3u32).is_zero();
    let rhs = if exact {
        let exp = usize::try_from(&n_big * 2u32 / 3u32)
            .map_err(|_| Error::budget("exponent 2n/3", &n_big, usize::MAX))?;
        Some(&five * (&orbit_part + pow_big(k, exp)))
    } else {
        None
    };
    let rhs_log2 = {
        let pk = n_big.to_string().parse::<f64>().expect("finite") * 2.0 / 3.0 * (k as f64).log2();
        let po = log2_big(&orbit_part);
        let (hi, lo) = if pk > po { (pk, po) } else { (po, pk) };
        log2_big(&five) + hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
    };
    let lhs = match (Family::Product { m, l, t }).build(budgets).and_then(|h| auto_count(&h, k, budgets)) {
        Ok(r) => Some(r.value),
        Err(err) if err.is_budget() => None,
        Err(err) => return Err(err),
    };
    let (holds, mode, rhs_q) = match (&lhs, &rhs) {
        (Some(v), Some(r)) => (Verdict::from_bool(v < r), Mode::Exact, Quantity::int(r)),
        (None, Some(r)) => (Verdict::Unevaluated, Mode::Exact, Quantity::int(r)),
        (Some(v), None) => (log2_verdict(log2_big(v), rhs_log2), Mode::Float, Quantity::from_log2(rhs_log2)),
        (None, None) => (Verdict::Unevaluated, Mode::Float, Quantity::from_log2(rhs_log2)),
    };
    Ok(BoundReport::new(
        "prop13",
        lhs.as_ref().map_or(Quantity::Missing, Quantity::int),
        rhs_q,
        holds,
        mode,
        inputs,
    )
    .asymptotic()
    .with_term("n(S_m,B_1)", Quantity::int(&n1))
    .with_term("n(S_m,B_1)^t", Quantity::int(&n_term)))
}

/// `n((S_m)^t, B_t) = n(S_m, B₁)^t` with the left side by Burnside over class
/// tuples of `(S_m)^t` in product action on `Ω^t`. The identity is exact for
/// `t = 1` but not in general: at `m = 3, ℓ = 1, t = 2` the product action has
/// 36 orbits against `4² = 16`. The term `coordinatewise` is the same Burnside
/// sum for `(S_m)^t` acting on `t` disjoint copies of `Ω`, where the identity
/// does hold.
pub fn lem15_check(m: usize, l: usize, t: usize, k: u32, budgets: &Budgets) -> Result<BoundReport> {
    if l == 0 || l > m || t == 0 {
        return Err(Error::params("lem15", format!("need 1 ≤ ℓ ≤ m and t ≥ 1, got m={m}, ℓ={l}, t={t}")));
    }
    let index = SubsetIndex::new(m, l, budgets.max_lift_degree)?;
    crate::actions::product_degree(m, l, t, budgets.max_lift_degree)?;
    let classes = partition_enum(m);
    let tuples = classes
        .len()
        .checked_pow(t as u32)
        .filter(|&c| c <= MAX_CLASS_TUPLES)
        .ok_or_else(|| Error::budget("class tuples", format!("p({m})^{t}"), MAX_CLASS_TUPLES))?;
    let reps: Vec<Permutation> = classes.iter().map(|p| p.cycle_type().representative()).collect();
    let sizes: Vec<BigUint> = classes.iter().map(Partition::class_size).collect();
    let top = Permutation::identity(t);
    let sigmas: Vec<usize> = reps
        .iter()
        .map(|r| sigma_prime(r, l, budgets.max_lift_degree))
        .collect::<Result<_>>()?;
    let mut terms = Vec::with_capacity(tuples);
    let mut disjoint = Vec::with_capacity(tuples);
    let mut digits = vec![0usize; t];
    for code in 0..tuples {
        let mut rest = code;
        for d in digits.iter_mut() {
            *d = rest % classes.len();
            rest /= classes.len();
        }
        let x = ProductActionElement::new(digits.iter().map(|&d| reps[d].clone()).collect(), top.clone())?;
        let weight = digits.iter().fold(BigUint::from(1u32), |acc, &d| acc * &sizes[d]);
        disjoint.push((weight.clone(), digits.iter().map(|&d| sigmas[d]).sum::<usize>()));
        terms.push((weight, x.gamma(&index, budgets.max_lift_degree)?));
    }
    let order: BigUint = Pow::pow(&factorial(m as u64), t);
    let lhs = divide_exact(weighted_power_sum(terms, k), &order)?;
    let coordinatewise = divide_exact(weighted_power_sum(disjoint, k), &order)?;
    let n1 = subset_orbit_count(m, l, k, budgets)?;
    let rhs: BigUint = Pow::pow(&n1, t);
    Ok(BoundReport::new(
        "lem15",
        Quantity::int(&lhs),
        Quantity::int(&rhs),
        Verdict::from_bool(int_rational(&lhs) == int_rational(&rhs)),
        Mode::Exact,
        Inputs {
            k: Some(k),
            m: Some(m),
            l: Some(l),
            t: Some(t),
            ..Inputs::default()
        },
    )
    .with_term("coordinatewise", Quantity::int(&coordinatewise))
    .with_note("identity: lhs = rhs; lhs in product action on Omega^t"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lem100Row {
    pub m: usize,
    /// Whether cycle types were sampled instead of enumerated.
    pub sampled: bool,
    /// (cycle type, ℓ) pairs checked.
    pub checked: u64,
    pub counterexamples: u64,
    /// First offending cycle type and `ℓ`.
    pub first_counterexample: Option<(Vec<usize>, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lem100Probe {
    pub rows: Vec<Lem100Row>,
    /// Smallest `m` in the range from which no counterexample was found.
    pub threshold: Option<usize>,
}

/// Searches for `π ∈ S_m` with `σ(π) ≤ 3m/4` and `|fix_ℓ(π)| ≥ (3/4)·C(m,ℓ)`
/// for some `1 ≤ ℓ < m/2`. Cycle types are enumerated when `p(m)` is small,
/// else `samples` random permutations are drawn from a seeded generator.
pub fn lem100_probe(ms: std::ops::RangeInclusive<usize>, samples: usize, seed: u64) -> Result<Lem100Probe> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for m in ms {
        let ls: Vec<usize> = (1..).take_while(|&l| 2 * l < m).take(crate::combinatorics::MAX_FORMULA_SUBSET_SIZE).collect();
        let sampled = partition_count(m) > BigUint::from(MAX_EXHAUSTIVE_PARTITIONS);
        let types: Vec<Vec<usize>> = if sampled {
            let mut points: Vec<usize> = (0..m).collect();
            (0..samples)
                .map(|_| {
                    points.shuffle(&mut rng);
                    let p = Permutation::from_images(points.clone()).expect("shuffled identity");
                    let mut lens = p.cycle_lengths();
                    lens.sort_unstable_by(|a, b| b.cmp(a));
                    lens
                })
                .collect()
        } else {
            partition_enum(m).into_iter().map(|p| p.parts().to_vec()).collect()
        };
        let mut row = Lem100Row {
            m,
            sampled,
            checked: 0,
            counterexamples: 0,
            first_counterexample: None,
        };
        for parts in types.iter().filter(|p| 4 * p.len() <= 3 * m) {
            let ct = CycleType::from_lengths(parts);
            for &l in &ls {
                row.checked += 1;
                let fix = fix_subsets_formula(&ct, l)?;
                if BigUint::from(4u32) * fix >= BigUint::from(3u32) * binomial(m as u64, l as u64) {
                    row.counterexamples += 1;
                    row.first_counterexample.get_or_insert_with(|| (parts.clone(), l));
                }
            }
        }
        rows.push(row);
    }
    let mut threshold = None;
    for row in rows.iter().rev() {
        if row.counterexamples > 0 {
            break;
        }
        threshold = Some(row.m);
    }
    Ok(Lem100Probe { rows, threshold })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budgets {
        Budgets::default()
    }

    #[test]
    fn orbit_counts_on_subsets() {
        assert_eq!(subset_orbit_count(5, 1, 2, &b()).unwrap(), 6u32.into());
        assert_eq!(subset_orbit_count(6, 1, 2, &b()).unwrap(), 7u32.into());
        assert_eq!(subset_orbit_count(3, 1, 2, &b()).unwrap(), 4u32.into());
        // graphs on 4 vertices up to isomorphism
        assert_eq!(subset_orbit_count(4, 2, 2, &b()).unwrap(), 11u32.into());
    }

    #[test]
    fn prop11_example() {
        let r = prop11_bound(5, 2, 2, &b()).unwrap();
        match r.rhs {
            Quantity::Float(x) => assert!((x - 861.08).abs() < 0.01, "{x}"),
            q => panic!("{q:?}"),
        }
        assert!(r.asymptotic);
        assert!(prop11_bound(4, 2, 2, &b()).is_err());
    }

    #[test]
    fn prop13_example() {
        let r = prop13_bound(6, 1, 1, 2, &b()).unwrap();
        assert_eq!(r.rhs, Quantity::Exact("468750".into()));
        assert_eq!(r.mode, Mode::Exact);
        let r = prop13_bound(3, 1, 2, 2, &b()).unwrap();
        assert_eq!(r.terms[1].1, Quantity::Exact("16".into()));
    }

    #[test]
    fn lem15_examples() {
        // binary m×m matrices up to row and column permutations: 36, 317
        for (m, t, lhs, rhs) in [(3, 2, "36", "16"), (4, 2, "317", "25"), (4, 1, "5", "5")] {
            let r = lem15_check(m, 1, t, 2, &b()).unwrap();
            assert_eq!(r.lhs, Quantity::Exact(lhs.into()));
            assert_eq!(r.rhs, Quantity::Exact(rhs.into()));
            assert_eq!(r.holds, Verdict::from_bool(lhs == rhs));
            assert_eq!(r.terms[0].1, Quantity::Exact(rhs.into()));
        }
    }

    #[test]
    fn matching() {
        assert_eq!(large_base_match(&Family::Subsets { m: 5, l: 2 }), Some((5, 2, 1)));
        assert_eq!(large_base_match(&Family::Product { m: 5, l: 1, t: 2 }), Some((5, 1, 2)));
        assert_eq!(large_base_match(&Family::Cyclic(6)), None);
        assert_eq!(large_base_match(&Family::Subsets { m: 4, l: 1 }), None);
    }

    #[test]
    fn e14_holds() {
        for (m, l) in [(5, 2), (6, 3), (7, 2)] {
            assert_eq!(e14_check(m, l, &b()).unwrap().holds, Verdict::Holds);
        }
    }

    #[test]
    fn probe_is_deterministic() {
        let a = lem100_probe(5..=12, 50, 7).unwrap();
        let b = lem100_probe(5..=12, 50, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rows.len(), 8);
    }
}
