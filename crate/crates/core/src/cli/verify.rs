//! Cross-check suites behind `verify`.

use std::io::Write;

use clap::ValueEnum;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{json, Output};
use crate::actions::{build_family, fixed_subset_profile, CycleType};
use crate::bounds::{self, BoundReport, Quantity, Verdict};
use crate::classcount::{
    brute_force_count, burnside_orbit_count, clifford_count, closed_form_count, direct_orbit_count, orbit_census,
    schmid_cyclic, symmetric_closed_form,
};
use crate::combinatorics::{
    binomial, factorial, fix_subsets_formula, partition_enum, stirling_first, stirling_first_row,
    tuples_of_partitions_count, weak_composition_count,
};
use crate::error::{Error, Result};
use crate::{Budgets, PermGroup, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Oracles,
    Burnside,
    Formulas,
    Bounds,
    Semiprimitive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub name: String,
    pub passed: bool,
    /// Refused by a budget; counts as passed.
    pub skipped: bool,
    pub detail: String,
}

/// Groups used by the oracle and Burnside suites.
pub const TRIANGULATION_GROUPS: [&str; 9] = [
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "klein",
    "symmetric:3",
    "dihedral:4",
    "wreath-cyclic:2",
    "cyclic:5",
    "alternating:4",
];

/// Largest `kⁿ·|H|` the oracle suite hands to brute force.
pub const BRUTE_LIMIT: u64 = 1_000_000;

type Check = Box<dyn Fn(&Budgets) -> Result<(bool, String)> + Send + Sync>;

struct Case {
    name: String,
    check: Check,
}

fn case(name: impl Into<String>, check: impl Fn(&Budgets) -> Result<(bool, String)> + Send + Sync + 'static) -> Case {
    Case {
        name: name.into(),
        check: Box::new(check),
    }
}

fn agree<T: PartialEq + std::fmt::Display>(label: &str, a: T, b: T) -> (bool, String) {
    if a == b {
        (true, format!("{label}: {a}"))
    } else {
        (false, format!("{label}: {a} != {b}"))
    }
}

fn group(spec: &str, b: &Budgets) -> Result<PermGroup> {
    build_family(spec, b)
}

fn oracle_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for spec in TRIANGULATION_GROUPS {
        for k in [2u32, 3] {
            out.push(case(format!("{spec} k={k}"), move |b| {
                let h = group(spec, b)?;
                let size = (k as u64).pow(h.degree() as u32) * h.order_usize()? as u64;
                if size > BRUTE_LIMIT {
                    return Err(Error::budget("brute force size", size, BRUTE_LIMIT));
                }
                let c = clifford_count(&h, k, b)?.value;
                let r = brute_force_count(k, &h, b)?.value;
                let (mut ok, mut detail) = agree("clifford vs brute", &c, &r);
                if let Some(cf) = closed_form_count(&h, k)? {
                    let (ok2, d2) = agree("closed form", &cf.value, &c);
                    ok &= ok2;
                    detail = format!("{detail}; {d2}");
                }
                Ok((ok, detail))
            }));
        }
    }
    out
}

fn burnside_cases() -> Vec<Case> {
    let mut out = Vec::new();
    // (spec, |H| when it is known to exceed what the census should materialize)
    let mut specs: Vec<(String, Option<BigUint>)> = TRIANGULATION_GROUPS.iter().map(|s| (s.to_string(), None)).collect();
    for m in 2..=20usize {
        for l in 1..=m / 2 {
            if binomial(m as u64, l as u64) <= BigUint::from(20u32) {
                specs.push((format!("subsets:{m},{l}"), Some(factorial(m as u64))));
            }
        }
    }
    for (spec, order) in specs {
        for k in [2u32, 3] {
            let spec = spec.clone();
            let order = order.clone();
            out.push(case(format!("{spec} k={k}"), move |b| {
                let h = group(&spec, b)?;
                // keep the suite quick: direct sweeps up to 4^11 colorings
                crate::classcount::coloring_space(k, h.degree(), 1 << 22)?;
                let f = burnside_orbit_count(&h, k)?;
                let direct = direct_orbit_count(&h, k, b)?;
                let (mut ok, mut detail) = agree("burnside vs direct", &f, &direct);
                // the census needs the group's elements; skip it when they are out of budget
                let census = match &order {
                    Some(o) if *o > BigUint::from(b.max_group_order) => Err(Error::budget("group order", o, b.max_group_order)),
                    _ => orbit_census(&h, k, b),
                };
                match census {
                    Ok(c) => {
                        let via = c.class_count_via_delta();
                        ok &= BigUint::from(c.total_orbits) == f && via == Some(c.class_sum);
                        detail = format!("{detail}; census {}, class sum {} via delta {via:?}", c.total_orbits, c.class_sum);
                    }
                    Err(e) if e.is_budget() => {}
                    Err(e) => return Err(e),
                }
                Ok((ok, detail))
            }));
        }
    }
    for n in 1..=8usize {
        for k in 1..=4u32 {
            out.push(case(format!("symmetric:{n} k={k} weak compositions"), move |b| {
                let h = group(&format!("symmetric:{n}"), b)?;
                Ok(agree(
                    "burnside vs C(n+k-1,k-1)",
                    burnside_orbit_count(&h, k)?,
                    weak_composition_count(n as u64, k as u64)?,
                ))
            }));
        }
    }
    out
}

/// Formula against a full sweep of the fixed subsets of `p`, for every `ℓ`.
fn fix_profile_check(p: &Permutation) -> Result<Option<String>> {
    let direct = fixed_subset_profile(p)?;
    let ct = CycleType::of(p);
    for (l, &d) in direct.iter().enumerate().skip(1) {
        let f = fix_subsets_formula(&ct, l)?;
        if f != BigUint::from(d) {
            return Ok(Some(format!("{p} ℓ={l}: formula {f}, direct {d}")));
        }
    }
    Ok(None)
}

fn all_permutations(m: usize, mut visit: impl FnMut(&Permutation) -> Result<bool>) -> Result<bool> {
    // Heap's algorithm
    let mut a: Vec<usize> = (0..m).collect();
    let mut c = vec![0usize; m];
    if !visit(&Permutation::from_images(a.iter().copied())?)? {
        return Ok(false);
    }
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            if !visit(&Permutation::from_images(a.iter().copied())?)? {
                return Ok(false);
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(true)
}

fn formula_cases(seed: u64) -> Vec<Case> {
    let mut out = Vec::new();
    for m in 1..=7usize {
        out.push(case(format!("fix subsets S_{m} exhaustive"), move |_| {
            let mut first = None;
            let mut count = 0u64;
            all_permutations(m, |p| {
                count += 1;
                first = fix_profile_check(p)?;
                Ok(first.is_none())
            })?;
            Ok(match first {
                None => (true, format!("{count} permutations, all ℓ")),
                Some(d) => (false, d),
            })
        }));
    }
    out.push(case("fix subsets S_14 sampled", move |_| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut images: Vec<usize> = (0..14).collect();
        for _ in 0..200 {
            images.shuffle(&mut rng);
            let p = Permutation::from_images(images.iter().copied())?;
            if let Some(d) = fix_profile_check(&p)? {
                return Ok((false, d));
            }
        }
        Ok((true, format!("200 permutations, seed {seed}")))
    }));
    out.push(case("stirling first kind", |_| {
        for m in 1..=12usize {
            let row = stirling_first_row(m);
            let sum: BigUint = row.iter().sum();
            if sum != factorial(m as u64) {
                return Ok((false, format!("row {m} sums to {sum}")));
            }
            for (j, entry) in row.iter().enumerate().skip(1) {
                // S(j,m) = S(j−1,m−1) + (m−1)·S(j,m−1)
                let rec = stirling_first(j - 1, m - 1) + BigUint::from(m - 1) * stirling_first(j, m - 1);
                if stirling_first(j, m) != rec || *entry != rec {
                    return Ok((false, format!("S({j},{m}) recurrence")));
                }
            }
        }
        Ok((true, "row sums m! and recurrence, m ≤ 12".into()))
    }));
    out.push(case("partition enumeration", |_| {
        // class sizes of S_m sum to m!
        for m in 1..=12usize {
            let total: BigUint = partition_enum(m).iter().map(|p| p.class_size()).sum();
            if total != factorial(m as u64) {
                return Ok((false, format!("class sizes of S_{m} sum to {total}")));
            }
        }
        Ok((true, "class sizes sum to m!, m ≤ 12".into()))
    }));
    for n in 1..=6usize {
        for k in 1..=3u32 {
            out.push(case(format!("symmetric closed form n={n} k={k}"), move |b| {
                let h = group(&format!("symmetric:{n}"), b)?;
                let c = clifford_count(&h, k, b)?.value;
                let t = tuples_of_partitions_count(k as usize, n)?;
                let (ok, d) = agree("clifford vs tuples", &c, &t);
                Ok((ok && symmetric_closed_form(k, n)? == t, d))
            }));
        }
    }
    for p in [2usize, 3, 5] {
        for k in 1..=4u32 {
            out.push(case(format!("cyclic closed form p={p} k={k}"), move |b| {
                let h = group(&format!("cyclic:{p}"), b)?;
                let c = clifford_count(&h, k, b)?.value;
                let s = schmid_cyclic(k, p)?;
                let (ok, d) = match &s.exact {
                    Some(e) => agree("clifford vs schmid", &c, e),
                    None => (false, "no exact value".into()),
                };
                Ok((ok && c <= s.upper, d))
            }));
        }
    }
    out
}

/// Names of reports that must hold whenever they are evaluated.
const UNCONDITIONAL: [&str; 9] = [
    "e3",
    "f1",
    "mu-b",
    "nonregular-t",
    "nonregular-delta",
    "class-identity",
    "ee11",
    "eee111-conclusion",
    "thm3-conclusion",
];

fn report_failures(reports: &[BoundReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| UNCONDITIONAL.contains(&r.name.as_str()))
        .filter(|r| r.holds == Verdict::Fails || r.holds == Verdict::Indeterminate)
        .map(|r| format!("{} {}: lhs {} rhs {}", r.name, r.holds.as_str(), r.lhs, r.rhs))
        .collect()
}

fn bounds_cases() -> Vec<Case> {
    let mut out = Vec::new();
    let specs = [
        "cyclic:2",
        "cyclic:3",
        "cyclic:4",
        "cyclic:6",
        "klein",
        "symmetric:3",
        "symmetric:4",
        "dihedral:4",
        "dihedral:5",
        "wreath-cyclic:2",
        "wreath-cyclic:3",
        "alternating:4",
        "quaternion",
        "subsets:5,2",
    ];
    for spec in specs {
        for k in [2u32, 3] {
            out.push(case(format!("predicates {spec} k={k}"), move |b| {
                let reports = bounds::predicates(&group(spec, b)?, k, b)?;
                let fails = report_failures(&reports);
                Ok((fails.is_empty(), if fails.is_empty() { format!("{} reports", reports.len()) } else { fails.join("; ") }))
            }));
        }
    }
    for m in 2..=4usize {
        for t in 1..=2usize {
            for k in 1..=2u32 {
                out.push(case(format!("lem15 m={m} t={t} k={k}"), move |b| {
                    let r = bounds::lem15_check(m, 1, t, k, b)?;
                    // the coordinatewise count equals n(S_m,B_1)^t; the product
                    // action count is reported alongside
                    let coord = r.terms.iter().find(|(n, _)| n == "coordinatewise").map(|(_, q)| q.clone());
                    let ok = coord.as_ref() == Some(&r.rhs);
                    Ok((ok, format!("product action {}, coordinatewise {:?}, power {}", r.lhs, coord, r.rhs)))
                }));
            }
        }
    }
    for m in 2..=8usize {
        for l in 1..m {
            out.push(case(format!("e14 m={m} l={l}"), move |b| {
                let r = bounds::e14_check(m, l, b)?;
                Ok((r.holds == Verdict::Holds, format!("lhs {} rhs {}", r.lhs, r.rhs)))
            }));
        }
    }
    out.push(case("prop13 rhs at m=6 l=1 t=1 k=2", |b| {
        let r = bounds::prop13_bound(6, 1, 1, 2, b)?;
        Ok(agree("rhs", r.rhs, Quantity::Exact("468750".into())))
    }));
    out
}

fn semiprimitive_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for spec in ["cyclic:4", "cyclic:6", "cyclic:8", "quaternion"] {
        for k in [2u32, 3] {
            out.push(case(format!("{spec} k={k}"), move |b| {
                let r = bounds::semiprimitive_report(&group(spec, b)?, k, b)?;
                Ok((
                    r.all_hold(),
                    format!(
                        "r={} |K|={} semiregular={} block sigma={} alpha={} step={} chain={}",
                        r.r,
                        r.kernel_order,
                        r.kernel_semiregular,
                        r.block_sigma_holds,
                        r.alpha_bound.holds.as_str(),
                        r.chain_first_step.holds.as_str(),
                        r.chain.holds.as_str()
                    ),
                ))
            }));
        }
    }
    for spec in ["wreath-cyclic:2", "dihedral:4"] {
        out.push(case(format!("{spec} rejected"), move |b| {
            Ok(match bounds::semiprimitive_report(&group(spec, b)?, 2, b) {
                Err(Error::NotSemiprimitive) => (true, "not semiprimitive".into()),
                Err(e) => return Err(e),
                Ok(_) => (false, "accepted".into()),
            })
        }));
    }
    out
}

/// Runs every case of `suite` on up to `jobs` threads, in input order.
pub fn run_suite(suite: Suite, budgets: &Budgets, jobs: usize, seed: u64) -> Result<Vec<CaseOutcome>> {
    let cases = match suite {
        Suite::Oracles => oracle_cases(),
        Suite::Burnside => burnside_cases(),
        Suite::Formulas => formula_cases(seed),
        Suite::Bounds => bounds_cases(),
        Suite::Semiprimitive => semiprimitive_cases(),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        cases
            .par_iter()
            .map(|c| match (c.check)(budgets) {
                Ok((passed, detail)) => CaseOutcome {
                    name: c.name.clone(),
                    passed,
                    skipped: false,
                    detail,
                },
                Err(e) if e.is_budget() => CaseOutcome {
                    name: c.name.clone(),
                    passed: true,
                    skipped: true,
                    detail: e.to_string(),
                },
                Err(e) => CaseOutcome {
                    name: c.name.clone(),
                    passed: false,
                    skipped: false,
                    detail: format!("error: {e}"),
                },
            })
            .collect()
    }))
}

pub(super) fn write_outcomes(outcomes: &[CaseOutcome], output: Output, out: &mut dyn Write) -> std::io::Result<()> {
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let skipped = outcomes.iter().filter(|o| o.skipped).count();
    match output {
        Output::Json => writeln!(out, "{}", json(&outcomes)),
        Output::Csv => {
            writeln!(out, "name,status,detail")?;
            for o in outcomes {
                writeln!(out, "{},{},{}", super::csv_field(&o.name), status(o), super::csv_field(&o.detail))?;
            }
            Ok(())
        }
        Output::Table => {
            for o in outcomes {
                writeln!(out, "{:<5} {:<40} {}", status(o), o.name, o.detail)?;
            }
            writeln!(
                out,
                "{} cases: {} passed, {} skipped, {} failed",
                outcomes.len(),
                outcomes.len() - failed - skipped,
                skipped,
                failed
            )
        }
    }
}

fn status(o: &CaseOutcome) -> &'static str {
    match (o.passed, o.skipped) {
        (_, true) => "skip",
        (true, false) => "ok",
        (false, false) => "FAIL",
    }
}
