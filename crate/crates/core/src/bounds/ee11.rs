use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{
    ceil_cbrt, float_verdict, int_rational, pow_big, rational, BoundReport, Inputs, Mode, Quantity, Verdict,
};
use crate::classcount::{auto_count, orbit_census};
use crate::error::{Error, Result};
use crate::{Budgets, PermGroup};

/// Where the value of `e` (largest subgroup class number) came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ESource {
    #[serde(rename = "exact-lattice")]
    ExactLattice,
    /// `⌈5^{n/3}⌉`
    #[serde(rename = "gm-5^(n/3)")]
    Gm,
    /// `5^{n−1}`
    #[serde(rename = "kr-5^(n-1)")]
    Kr,
}

impl ESource {
    pub fn as_str(self) -> &'static str {
        match self {
            ESource::ExactLattice => "exact-lattice",
            ESource::Gm => "gm-5^(n/3)",
            ESource::Kr => "kr-5^(n-1)",
        }
    }
}

/// Requested source for `e`; `Auto` tries the lattice and falls back to `Gm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ESourceChoice {
    #[default]
    Auto,
    Exact,
    Gm,
    Kr,
}

pub fn resolve_e(h: &PermGroup, choice: ESourceChoice, budgets: &Budgets) -> Result<(BigUint, ESource)> {
    let n = h.degree();
    let gm = || (ceil_cbrt(&pow_big(5, n)), ESource::Gm);
    match choice {
        ESourceChoice::Exact => Ok((
            h.max_subgroup_class_count(budgets.max_lattice_order)?.into(),
            ESource::ExactLattice,
        )),
        ESourceChoice::Gm => Ok(gm()),
        ESourceChoice::Kr => Ok((pow_big(5, n.saturating_sub(1)), ESource::Kr)),
        ESourceChoice::Auto => match h.max_subgroup_class_count(budgets.max_lattice_order) {
            Ok(e) => Ok((e.into(), ESource::ExactLattice)),
            Err(err) if err.is_budget() => Ok(gm()),
            Err(err) => Err(err),
        },
    }
}

fn max_sigma(h: &PermGroup) -> Result<usize> {
    h.elements()?
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| x.cycle_count())
        .max()
        .ok_or_else(|| Error::Invalid("the bound needs a nontrivial group".into()))
}

fn ee11_rhs(h: &PermGroup, k: u32, e: &BigUint) -> Result<(BigRational, BigRational, BigRational, usize)> {
    let ms = max_sigma(h)?;
    let first = rational(&pow_big(k, h.degree()), &h.order()?);
    let second = int_rational(&(BigUint::from(2u32) * e * pow_big(k, ms)));
    Ok((&first + &second, first, second, ms))
}

/// `k(G) < kⁿ/|H| + 2e·k^{max σ}`, with the left side from [`auto_count`] when feasible.
pub fn eq_ee11(h: &PermGroup, k: u32, choice: ESourceChoice, budgets: &Budgets) -> Result<BoundReport> {
    let (e, source) = resolve_e(h, choice, budgets)?;
    let (rhs, first, second, ms) = ee11_rhs(h, k, &e)?;
    let inputs = Inputs {
        k: Some(k),
        n: Some(h.degree()),
        order: Some(h.order()?.to_string()),
        max_sigma: Some(ms),
        e: Some(e.to_string()),
        ..Inputs::default()
    };
    let (lhs, holds) = match auto_count(h, k, budgets) {
        Ok(r) => {
            let holds = Verdict::from_bool(int_rational(&r.value) < rhs);
            (Quantity::int(&r.value), holds)
        }
        Err(err) if err.is_budget() => (Quantity::Missing, Verdict::Unevaluated),
        Err(err) => return Err(err),
    };
    let mut report = BoundReport::new("ee11", lhs, Quantity::ratio(&rhs), holds, Mode::Exact, inputs)
        .with_term("k^n/|H|", Quantity::ratio(&first))
        .with_term("2e*k^max_sigma", Quantity::ratio(&second));
    report.e_source = Some(source);
    Ok(report)
}

/// Largest integer strictly below the ee11 bound (with `e` resolved automatically).
pub fn ee11_integer_upper(h: &PermGroup, k: u32, budgets: &Budgets) -> Result<BigUint> {
    let (e, _) = resolve_e(h, ESourceChoice::Auto, budgets)?;
    let (rhs, ..) = ee11_rhs(h, k, &e)?;
    let ceil = rhs.ceil().to_integer();
    Ok(ceil.magnitude() - 1u32)
}

/// `σ(h) ≤ (n + |fix h|)/2` for every element, reported as `max(2σ − fix) ≤ n`.
pub fn e3_check(h: &PermGroup) -> Result<BoundReport> {
    let n = h.degree();
    let worst = h
        .elements()?
        .iter()
        .map(|x| 2 * x.cycle_count() - x.fixed_point_count())
        .max()
        .expect("nonempty");
    Ok(BoundReport::new(
        "e3",
        Quantity::Exact(worst.to_string()),
        Quantity::Exact(n.to_string()),
        Verdict::from_bool(worst <= n),
        Mode::Exact,
        Inputs {
            n: Some(n),
            ..Inputs::default()
        },
    )
    .with_note("max over h of 2*sigma(h) - fix(h), compared with n"))
}

/// `k(G) < (1 + 1/(kn))·kⁿ/|H|`, checked exactly.
fn small_order_conclusion(name: &str, h: &PermGroup, k: u32, budgets: &Budgets, inputs: &Inputs) -> Result<BoundReport> {
    let n = h.degree();
    let kn = BigUint::from(k) * n;
    let rhs = rational(&((&kn + 1u32) * pow_big(k, n)), &(&kn * h.order()?));
    let (lhs, holds) = match auto_count(h, k, budgets) {
        Ok(r) => (Quantity::int(&r.value), Verdict::from_bool(int_rational(&r.value) < rhs)),
        Err(err) if err.is_budget() => (Quantity::Missing, Verdict::Unevaluated),
        Err(err) => return Err(err),
    };
    Ok(BoundReport::new(name, lhs, Quantity::ratio(&rhs), holds, Mode::Exact, inputs.clone()))
}

/// `|H| ≤ 2^{√n/4}`, i.e. `|H|⁴ ≤ 2^{√n}`: exact when `n` is a square or the
/// integer bracket `⌊√n⌋ ≤ √n < ⌊√n⌋+1` decides it, else binary64.
fn thm3_condition(order: &BigUint, n: usize) -> (Verdict, Mode) {
    let s = n.sqrt();
    let lhs = order.pow(4);
    let low = pow_big(2, s);
    if s * s == n {
        return (Verdict::from_bool(lhs <= low), Mode::Exact);
    }
    if lhs <= low {
        return (Verdict::Holds, Mode::Exact);
    }
    if lhs > pow_big(2, s + 1) {
        return (Verdict::Fails, Mode::Exact);
    }
    let l = 4.0 * super::log2_big(order);
    (float_verdict(l, (n as f64).sqrt()), Mode::Float)
}

/// The unconditional inequalities and the small-order conditions for `H`.
///
/// Reports: `e3`, `f1` and `mu-b` (transitive `H` only), `eee111-i`,
/// `eee111-ii`, `thm3-condition`, the conclusions of the last three when their
/// condition holds, the non-regular orbit bounds with the class identity (when
/// colorings are enumerable), and `ee11`.
pub fn predicates(h: &PermGroup, k: u32, budgets: &Budgets) -> Result<Vec<BoundReport>> {
    let n = h.degree();
    let order = h.order()?;
    let inv = h.numeric_invariants(false, budgets.max_lattice_order)?;
    let base_inputs = Inputs {
        k: Some(k),
        n: Some(n),
        order: Some(order.to_string()),
        max_sigma: Some(inv.max_sigma),
        ..Inputs::default()
    };
    let mut out = vec![e3_check(h)?];

    let transitive = h.is_transitive();
    // fix(h) ≤ n − μ for h ≠ 1, and fpr ≤ 1 − 1/log₂|H| ⇔ |H|^{n−fix} ≥ 2ⁿ.
    let f1 = if transitive {
        let holds = order.pow(inv.mu as u32) >= pow_big(2, n);
        let rhs = 1.0 - 1.0 / super::log2_big(&order);
        BoundReport::new(
            "f1",
            Quantity::ratio(&rational(&BigUint::from(n - inv.mu), &BigUint::from(n))),
            Quantity::Float(rhs),
            Verdict::from_bool(holds),
            Mode::Exact,
            base_inputs.clone(),
        )
        .with_note("decided by |H|^mu >= 2^n")
    } else {
        BoundReport::new("f1", Quantity::Missing, Quantity::Missing, Verdict::Unevaluated, Mode::Exact, base_inputs.clone())
            .with_note("requires a transitive group")
    };
    out.push(f1);

    let mu_b = BoundReport::new(
        "mu-b",
        Quantity::Exact((inv.mu * inv.b).to_string()),
        Quantity::Exact(n.to_string()),
        if transitive {
            Verdict::from_bool(inv.mu * inv.b >= n)
        } else {
            Verdict::Unevaluated
        },
        Mode::Exact,
        base_inputs.clone(),
    )
    .with_note("mu*b >= n")
    .with_term("mu", Quantity::Exact(inv.mu.to_string()))
    .with_term("b", Quantity::Exact(inv.b.to_string()));
    out.push(mu_b);

    // max σ ≤ n − log_k(2kn|H|²) ⇔ k^{n − max σ} ≥ 2kn|H|²
    let need = BigUint::from(2u32) * k * n * &order * &order;
    let have = pow_big(k, n - inv.max_sigma);
    let cond_i = if k >= 2 { have >= need } else { false };
    out.push(
        BoundReport::new(
            "eee111-i",
            Quantity::int(&have),
            Quantity::int(&need),
            Verdict::from_bool(cond_i),
            Mode::Exact,
            base_inputs.clone(),
        )
        .with_note("condition k^(n - max_sigma) >= 2kn|H|^2"),
    );
    let has_transposition = h.elements()?.iter().any(|x| x.support_size() == 2);
    out.push(
        BoundReport::new(
            "eee111-ii",
            Quantity::Exact(u8::from(has_transposition).to_string()),
            Quantity::Exact("0".into()),
            Verdict::from_bool(!has_transposition),
            Mode::Exact,
            base_inputs.clone(),
        )
        .with_note("condition: H contains no transposition (lhs 1 if it does)")
        .asymptotic(),
    );
    if cond_i {
        out.push(small_order_conclusion("eee111-conclusion", h, k, budgets, &base_inputs)?);
    }

    let (cond3, mode3) = thm3_condition(&order, n);
    out.push(
        BoundReport::new(
            "thm3-condition",
            Quantity::Float(4.0 * super::log2_big(&order)),
            Quantity::Float((n as f64).sqrt()),
            cond3,
            mode3,
            base_inputs.clone(),
        )
        .with_note("condition 4*log2|H| <= sqrt(n)"),
    );
    if cond3 == Verdict::Holds {
        out.push(small_order_conclusion("thm3-conclusion", h, k, budgets, &base_inputs)?);
    }

    match orbit_census(h, k, budgets) {
        Ok(c) => {
            let pow = pow_big(k, inv.max_sigma);
            let t_bound = BigUint::from(2u32) * &pow;
            let d_bound = (&order - 1u32) * &pow;
            out.push(BoundReport::new(
                "nonregular-t",
                Quantity::Exact(c.nonregular_orbits.to_string()),
                Quantity::int(&t_bound),
                Verdict::from_bool(BigUint::from(c.nonregular_orbits) < t_bound),
                Mode::Exact,
                base_inputs.clone(),
            ));
            out.push(BoundReport::new(
                "nonregular-delta",
                Quantity::Exact(c.delta_size.to_string()),
                Quantity::int(&d_bound),
                Verdict::from_bool(BigUint::from(c.delta_size) <= d_bound),
                Mode::Exact,
                base_inputs.clone(),
            ));
            let via = c.class_count_via_delta();
            out.push(
                BoundReport::new(
                    "class-identity",
                    Quantity::Exact(c.class_sum.to_string()),
                    via.map_or(Quantity::Missing, |v| Quantity::Exact(v.to_string())),
                    Verdict::from_bool(via == Some(c.class_sum)),
                    Mode::Exact,
                    base_inputs.clone(),
                )
                .with_note("sum over orbits vs (k^n - |Delta|)/|H| + non-regular sum"),
            );
        }
        Err(err) if err.is_budget() => {}
        Err(err) => return Err(err),
    }

    out.push(eq_ee11(h, k, ESourceChoice::Auto, budgets)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::build_family;

    fn group(spec: &str) -> PermGroup {
        build_family(spec, &Budgets::default()).unwrap()
    }

    fn rhs(report: &BoundReport) -> String {
        match &report.rhs {
            Quantity::Exact(s) => s.clone(),
            q => panic!("{q:?}"),
        }
    }

    #[test]
    fn ee11_examples() {
        let b = Budgets::default();
        let r = eq_ee11(&group("cyclic:2"), 2, ESourceChoice::Exact, &b).unwrap();
        assert_eq!((rhs(&r), r.holds), ("10".to_string(), Verdict::Holds));
        let r = eq_ee11(&group("cyclic:3"), 2, ESourceChoice::Exact, &b).unwrap();
        assert_eq!(rhs(&r), "44/3");
        let r = eq_ee11(&group("symmetric:3"), 2, ESourceChoice::Exact, &b).unwrap();
        assert_eq!(rhs(&r), "76/3");
        assert_eq!(r.e_source, Some(ESource::ExactLattice));
        assert_eq!(r.lhs, Quantity::Exact("10".into()));
    }

    #[test]
    fn e_fallbacks() {
        let b = Budgets::default();
        let h = group("cyclic:4");
        assert_eq!(resolve_e(&h, ESourceChoice::Gm, &b).unwrap(), (9u32.into(), ESource::Gm));
        assert_eq!(resolve_e(&h, ESourceChoice::Kr, &b).unwrap(), (125u32.into(), ESource::Kr));
        let tight = Budgets {
            max_lattice_order: 2,
            ..b
        };
        assert_eq!(resolve_e(&h, ESourceChoice::Auto, &tight).unwrap().1, ESource::Gm);
        assert!(resolve_e(&h, ESourceChoice::Exact, &tight).unwrap_err().is_budget());
    }

    #[test]
    fn predicate_examples() {
        let b = Budgets::default();
        let reports = predicates(&group("symmetric:3"), 2, &b).unwrap();
        let find = |name: &str| reports.iter().find(|r| r.name == name).unwrap().clone();
        assert_eq!(find("mu-b").lhs, Quantity::Exact("4".into()));
        assert_eq!(find("mu-b").holds, Verdict::Holds);
        for name in ["e3", "f1", "nonregular-t", "nonregular-delta", "class-identity", "ee11"] {
            assert_eq!(find(name).holds, Verdict::Holds, "{name}");
        }
        let c3 = predicates(&group("cyclic:3"), 2, &b).unwrap();
        assert_eq!(c3.iter().find(|r| r.name == "eee111-i").unwrap().holds, Verdict::Fails);
        assert_eq!(c3.iter().find(|r| r.name == "thm3-condition").unwrap().holds, Verdict::Fails);
    }

    #[test]
    fn thm3_bracket() {
        assert_eq!(thm3_condition(&BigUint::from(2u32), 64), (Verdict::Holds, Mode::Exact));
        assert_eq!(thm3_condition(&BigUint::from(4u32), 64), (Verdict::Holds, Mode::Exact));
        assert_eq!(thm3_condition(&BigUint::from(5u32), 64), (Verdict::Fails, Mode::Exact));
        // |H|⁴ = 16 = 2⁴ while √17 > 4
        assert_eq!(thm3_condition(&BigUint::from(2u32), 17), (Verdict::Holds, Mode::Exact));
    }

    #[test]
    fn integer_upper() {
        let b = Budgets::default();
        assert_eq!(ee11_integer_upper(&group("cyclic:2"), 2, &b).unwrap(), 9u32.into());
        assert_eq!(ee11_integer_upper(&group("cyclic:3"), 2, &b).unwrap(), 14u32.into());
    }
}
