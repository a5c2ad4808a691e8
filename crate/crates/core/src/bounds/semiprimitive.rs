use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{pow_big, rational, BoundReport, Inputs, Mode, Quantity, Verdict};
use crate::actions::{block_decomposition, Decomposition};
use crate::classcount::{burnside_orbit_count, group_label, meets, orbit_census};
use crate::error::{Error, Result};
use crate::permgroup::IndexSet;
use crate::{Budgets, PermGroup};

/// The block-kernel decomposition of a semiprimitive imprimitive group and
/// the orbit-count estimates built on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiprimitiveReport {
    pub group: String,
    pub k: u32,
    pub n: usize,
    pub order: String,
    /// Number of blocks.
    pub r: usize,
    pub blocks: Vec<Vec<usize>>,
    pub kernel_order: String,
    pub quotient_order: String,
    pub kernel_semiregular: bool,
    /// `σ_Ω(h) ≤ (n/r)·σ_Ω̄(h)` for every `h`.
    pub block_sigma_holds: bool,
    pub alpha_bound: BoundReport,
    pub chain_first_step: BoundReport,
    pub chain: BoundReport,
    /// Largest class number of a coloring stabilizer meeting the kernel trivially.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e_k: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gustafson: Option<BoundReport>,
}

impl SemiprimitiveReport {
    pub fn all_hold(&self) -> bool {
        self.kernel_semiregular
            && self.block_sigma_holds
            && self.alpha_bound.holds == Verdict::Holds
            && self.chain_first_step.holds == Verdict::Holds
            && self.chain.holds == Verdict::Holds
            && self.gustafson.as_ref().is_none_or(|g| g.holds == Verdict::Holds)
    }
}

/// Decides `d < c·k^{n/2}` (or `≤` when `or_equal`) exactly for `c ≥ 0`,
/// squaring both sides when `n` is odd.
fn below_half_power(d: &BigInt, c: &BigUint, k: u32, n: usize, or_equal: bool) -> bool {
    if d.is_negative() {
        return true;
    }
    let d = d.magnitude();
    let cmp = if n.is_even() {
        d.cmp(&(c * pow_big(k, n / 2)))
    } else {
        (d * d).cmp(&(c * c * pow_big(k, n)))
    };
    cmp.is_lt() || (or_equal && cmp.is_eq())
}

fn approx_half_power(c: &BigUint, k: u32, n: usize) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY) * (k as f64).powf(n as f64 / 2.0)
}

/// Orbit count of `group` on colorings with `colors` colors (an arbitrary-size integer).
fn orbits_with_colors(group: &PermGroup, colors: &BigUint) -> Result<BigUint> {
    let els = group.elements()?;
    let mut sum = BigUint::zero();
    for class in group.conjugacy_classes()? {
        sum += BigUint::from(class.len()) * Pow::pow(colors, els[class[0]].cycle_count());
    }
    crate::classcount::divide_exact(sum, &BigUint::from(els.len()))
}

/// Decomposes `H` along its block system with fewest blocks and checks the
/// orbit-count chain through the quotient exactly.
pub fn semiprimitive_report(h: &PermGroup, k: u32, budgets: &Budgets) -> Result<SemiprimitiveReport> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let structure = h.structure_classify(budgets.max_normal_order)?;
    if !structure.semiprimitive {
        return Err(Error::NotSemiprimitive);
    }
    let d = match block_decomposition(h)? {
        Decomposition::Primitive => return Err(Error::Primitive),
        Decomposition::Imprimitive(d) => d,
    };
    let n = h.degree();
    let r = d.r;
    let b = n / r;
    let els = h.elements()?;
    let order = BigUint::from(els.len());
    let kernel_order = d.kernel.order()?;
    let kernel_semiregular = d.kernel.is_semiregular()?;

    let mut block_sigma_holds = true;
    let mut outside_max = 0usize;
    for x in els {
        let bar = d.induced(x);
        let (s, sb) = (x.cycle_count(), bar.cycle_count());
        block_sigma_holds &= s <= b * sb;
        if !bar.is_identity() {
            outside_max = outside_max.max(sb);
        }
    }
    let max_sigma = els.iter().filter(|x| !x.is_identity()).map(|x| x.cycle_count()).max().unwrap_or(0);
    let inputs = Inputs {
        k: Some(k),
        n: Some(n),
        order: Some(order.to_string()),
        max_sigma: Some(max_sigma),
        r: Some(r),
        ..Inputs::default()
    };

    // α(H) ≤ max{1/2, max_{h∉K} σ_Ω̄(h)/r}, scaled by 2nr.
    let alpha_lhs = 2 * r * max_sigma;
    let alpha_rhs = (n * r).max(2 * n * outside_max);
    let alpha_bound = BoundReport::new(
        "semiprimitive-alpha",
        Quantity::Exact(alpha_lhs.to_string()),
        Quantity::Exact(alpha_rhs.to_string()),
        Verdict::from_bool(alpha_lhs <= alpha_rhs),
        Mode::Exact,
        inputs.clone(),
    )
    .with_note("2r*max_sigma <= max(nr, 2n*max over h outside K of sigma on blocks)");

    let orbits = burnside_orbit_count(h, k)?;
    let kn = pow_big(k, n);
    let lhs_scaled = BigInt::from(&orbits * &order);

    // first step: |H|·n(H) ≤ |K|·Σ_{h̄≠1} k^{b·σ_Ω̄(h̄)} + kⁿ + (|K|−1)k^{n/2}
    let q_els = d.quotient.elements()?;
    let outside: BigUint = q_els
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| pow_big(k, b * x.cycle_count()))
        .sum();
    let step_known = &kernel_order * &outside + &kn;
    let kernel_minus_one = &kernel_order - 1u32;
    let step_diff = &lhs_scaled - BigInt::from(step_known.clone());
    let step_holds = below_half_power(&step_diff, &kernel_minus_one, k, n, true);
    let step_rhs = if n.is_even() {
        Quantity::ratio(&rational(&(&step_known + &kernel_minus_one * pow_big(k, n / 2)), &order))
    } else {
        Quantity::Float(
            (step_known.to_f64().unwrap_or(f64::INFINITY) + approx_half_power(&kernel_minus_one, k, n))
                / order.to_f64().unwrap_or(f64::INFINITY),
        )
    };
    let chain_first_step = BoundReport::new(
        "semiprimitive-first-step",
        Quantity::int(&orbits),
        step_rhs,
        Verdict::from_bool(step_holds),
        Mode::Exact,
        inputs.clone(),
    )
    .with_note("n(H) <= (|K| sum k^(b*sigma_bar) + k^n + (|K|-1)k^(n/2)) / |H|");

    // chain: n(H) < n(H/K, k^b colors) + kⁿ/|H| + n·k^{n/2}/|H|
    let colors = pow_big(k, b);
    let quotient_orbits = orbits_with_colors(&d.quotient, &colors)?;
    let known = &quotient_orbits * &order + &kn;
    let diff = &lhs_scaled - BigInt::from(known.clone());
    let nb = BigUint::from(n);
    let chain_holds = below_half_power(&diff, &nb, k, n, false);
    let chain_rhs = if n.is_even() {
        Quantity::ratio(&rational(&(&known + &nb * pow_big(k, n / 2)), &order))
    } else {
        Quantity::Float(
            (known.to_f64().unwrap_or(f64::INFINITY) + approx_half_power(&nb, k, n))
                / order.to_f64().unwrap_or(f64::INFINITY),
        )
    };
    let chain = BoundReport::new(
        "semiprimitive-chain",
        Quantity::int(&orbits),
        chain_rhs,
        Verdict::from_bool(chain_holds),
        Mode::Exact,
        inputs.clone(),
    )
    .with_term("n(H/K, k^(n/r) colors)", Quantity::int(&quotient_orbits))
    .with_note("decided exactly; odd n compared after squaring");

    let e_k = match orbit_census(h, k, budgets) {
        Ok(c) => {
            let mut kernel = IndexSet::new(els.len());
            for x in d.kernel.elements()? {
                kernel.insert(h.index_of(x)?.expect("kernel lies in H"));
            }
            let regular = u64::from(c.total_orbits > c.nonregular_orbits);
            let best = c
                .stabilizers
                .iter()
                .filter(|s| meets(&s.members, &kernel) == 1)
                .map(|s| s.class_count as u64)
                .max()
                .unwrap_or(0)
                .max(regular);
            Some(best)
        }
        Err(err) if err.is_budget() => None,
        Err(err) => return Err(err),
    };
    let gustafson = match e_k {
        Some(e) if !h.is_abelian() => Some(
            BoundReport::new(
                "semiprimitive-gustafson",
                Quantity::Exact(e.to_string()),
                Quantity::ratio(&rational(&(&order * 5u32), &BigUint::from(8u32))),
                Verdict::from_bool(BigUint::from(8 * e) <= &order * 5u32),
                Mode::Exact,
                inputs,
            )
            .with_note("e_K <= (5/8)|H|"),
        ),
        _ => None,
    };

    Ok(SemiprimitiveReport {
        group: group_label(h),
        k,
        n,
        order: order.to_string(),
        r,
        blocks: d.blocks(),
        kernel_order: kernel_order.to_string(),
        quotient_order: d.quotient.order()?.to_string(),
        kernel_semiregular,
        block_sigma_holds,
        alpha_bound,
        chain_first_step,
        chain,
        e_k: e_k.map(|e| e.to_string()),
        gustafson,
    })
}
