//! Named group constructors and the `name[:p1,p2,...]` spec grammar.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::product::{product_degree, ProductActionElement};
use super::subsets::SubsetIndex;
use crate::budget::Budgets;
use crate::error::{Error, Result};
use crate::permgroup::parse_generators;
use crate::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `C_n` acting regularly on `n` points.
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Symmetries of the `n`-gon on its vertices.
    Dihedral(usize),
    /// `S_m` on `ℓ`-subsets.
    Subsets { m: usize, l: usize },
    /// `A_m` on `ℓ`-subsets.
    SubsetsAlt { m: usize, l: usize },
    /// `S_m ≀ S_t` in product action on `(ℓ-subsets)^t`.
    Product { m: usize, l: usize, t: usize },
    /// `C₂ ≀ C_m` in imprimitive action on `2m` points.
    WreathCyclic(usize),
    /// `C₂ × C₂` regular on 4 points.
    Klein,
    /// The quaternion group acting regularly on 8 points.
    Quaternion,
    Trivial(usize),
    /// Explicit generators in 1-indexed cycle notation.
    Gens { text: String, degree: Option<usize> },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cyclic(n) => write!(f, "cyclic:{n}"),
            Family::Symmetric(n) => write!(f, "symmetric:{n}"),
            Family::Alternating(n) => write!(f, "alternating:{n}"),
            Family::Dihedral(n) => write!(f, "dihedral:{n}"),
            Family::Subsets { m, l } => write!(f, "subsets:{m},{l}"),
            Family::SubsetsAlt { m, l } => write!(f, "subsets-alt:{m},{l}"),
            Family::Product { m, l, t } => write!(f, "product:{m},{l},{t}"),
            Family::WreathCyclic(m) => write!(f, "wreath-cyclic:{m}"),
            Family::Klein => write!(f, "klein"),
            Family::Quaternion => write!(f, "quaternion"),
            Family::Trivial(n) => write!(f, "trivial:{n}"),
            Family::Gens { text, degree: None } => write!(f, "gens:{text}"),
            Family::Gens { text, degree: Some(d) } => write!(f, "gens:[{d}]{text}"),
        }
    }
}

fn int_params(name: &str, raw: Option<&str>, want: usize) -> Result<Vec<usize>> {
    let raw = raw.ok_or_else(|| Error::params(name, format!("expected {want} parameter(s)")))?;
    let vals: Vec<usize> = raw
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::params(name, format!("`{}` is not a nonnegative integer", s.trim())))
        })
        .collect::<Result<_>>()?;
    if vals.len() != want {
        return Err(Error::params(name, format!("expected {want} parameter(s), got {}", vals.len())));
    }
    Ok(vals)
}

impl Family {
    pub fn parse(spec: &str) -> Result<Family> {
        let spec = spec.trim();
        let (name, raw) = match spec.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (spec, None),
        };
        let one = |min: usize| -> Result<usize> {
            let n = int_params(name, raw, 1)?[0];
            if n < min {
                return Err(Error::params(name, format!("degree must be at least {min}")));
            }
            Ok(n)
        };
        let fam = match name {
            "cyclic" => Family::Cyclic(one(1)?),
            "symmetric" => Family::Symmetric(one(1)?),
            "alternating" => Family::Alternating(one(1)?),
            "dihedral" => Family::Dihedral(one(3)?),
            "wreath-cyclic" => Family::WreathCyclic(one(1)?),
            "trivial" => Family::Trivial(one(1)?),
            "klein" | "quaternion" => {
                if raw.is_some_and(|r| !r.trim().is_empty()) {
                    return Err(Error::params(name, "takes no parameters"));
                }
                if name == "klein" {
                    Family::Klein
                } else {
                    Family::Quaternion
                }
            }
            "subsets" | "subsets-alt" => {
                let p = int_params(name, raw, 2)?;
                let (m, l) = (p[0], p[1]);
                if l == 0 || l >= m {
                    return Err(Error::params(name, format!("need 1 ≤ ℓ < m, got m={m}, ℓ={l}")));
                }
                if name == "subsets" {
                    Family::Subsets { m, l }
                } else {
                    Family::SubsetsAlt { m, l }
                }
            }
            "product" => {
                let p = int_params(name, raw, 3)?;
                let (m, l, t) = (p[0], p[1], p[2]);
                if l == 0 || l >= m || t == 0 {
                    return Err(Error::params(name, format!("need 1 ≤ ℓ < m and t ≥ 1, got m={m}, ℓ={l}, t={t}")));
                }
                Family::Product { m, l, t }
            }
            "gens" => {
                let raw = raw.unwrap_or("");
                let (degree, text) = match raw.trim_start().strip_prefix('[') {
                    Some(rest) => {
                        let (d, text) = rest
                            .split_once(']')
                            .ok_or_else(|| Error::params("gens", "unterminated `[degree]`"))?;
                        let d: usize = d
                            .trim()
                            .parse()
                            .map_err(|_| Error::params("gens", format!("bad degree `{d}`")))?;
                        if d == 0 {
                            return Err(Error::params("gens", "degree must be positive"));
                        }
                        (Some(d), text)
                    }
                    None => (None, raw),
                };
                // offset of the generator text inside the full spec, for error columns
                let offset = spec.len() - text.len();
                parse_generators(text, degree).map_err(|e| shift_column(e, offset))?;
                Family::Gens {
                    text: text.to_string(),
                    degree,
                }
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(fam)
    }

    /// Degree of the permutation action.
    pub fn degree(&self, budgets: &Budgets) -> Result<usize> {
        Ok(match *self {
            Family::Cyclic(n) | Family::Symmetric(n) | Family::Alternating(n) | Family::Dihedral(n) => n,
            Family::Trivial(n) => n,
            Family::Subsets { m, l } | Family::SubsetsAlt { m, l } => product_degree(m, l, 1, budgets.max_lift_degree)?,
            Family::Product { m, l, t } => product_degree(m, l, t, budgets.max_lift_degree)?,
            Family::WreathCyclic(m) => m.saturating_mul(2),
            Family::Klein => 4,
            Family::Quaternion => 8,
            Family::Gens { ref text, degree } => parse_generators(text, degree)?[0].degree(),
        })
    }

    /// Generators in the natural action; refused when the degree exceeds
    /// `budgets.max_lift_degree`.
    pub fn generators(&self, budgets: &Budgets) -> Result<Vec<Permutation>> {
        let degree = self.degree(budgets)?;
        if degree > budgets.max_lift_degree {
            return Err(Error::budget("degree", degree, budgets.max_lift_degree));
        }
        let cyc = |n: usize, pts: &[usize]| Permutation::from_cycles(n, &[pts]).expect("valid cycle");
        Ok(match *self {
            Family::Cyclic(n) => vec![cyc(n, &(0..n).collect::<Vec<_>>())],
            Family::Symmetric(n) => symmetric_gens(n),
            Family::Alternating(n) => alternating_gens(n),
            Family::Dihedral(n) => {
                let rot = cyc(n, &(0..n).collect::<Vec<_>>());
                let refl = Permutation::from_images((0..n).map(|i| (n - i) % n)).expect("reflection");
                vec![rot, refl]
            }
            Family::Trivial(n) => vec![Permutation::identity(n)],
            Family::Subsets { m, l } => lift_all(&symmetric_gens(m), m, l, budgets)?,
            Family::SubsetsAlt { m, l } => lift_all(&alternating_gens(m), m, l, budgets)?,
            Family::Product { m, l, t } => {
                product_degree(m, l, t, budgets.max_lift_degree)?;
                let index = SubsetIndex::new(m, l, budgets.max_lift_degree)?;
                let mut out = Vec::new();
                let id_m = Permutation::identity(m);
                let id_t = Permutation::identity(t);
                for g in symmetric_gens(m) {
                    let mut coords = vec![id_m.clone(); t];
                    coords[0] = g;
                    out.push(ProductActionElement::new(coords, id_t.clone())?.build(&index, budgets.max_lift_degree)?);
                }
                if t > 1 {
                    for tau in symmetric_gens(t) {
                        let coords = vec![id_m.clone(); t];
                        out.push(ProductActionElement::new(coords, tau)?.build(&index, budgets.max_lift_degree)?);
                    }
                }
                out
            }
            Family::WreathCyclic(m) => {
                let n = 2 * m;
                let swap = cyc(n, &[0, 1]);
                if m == 1 {
                    vec![swap]
                } else {
                    let shift = Permutation::from_images((0..n).map(|i| (i + 2) % n)).expect("shift");
                    vec![swap, shift]
                }
            }
            Family::Klein => vec![
                Permutation::from_images([1u32, 0, 3, 2]).expect("klein"),
                Permutation::from_images([2u32, 3, 0, 1]).expect("klein"),
            ],
            Family::Quaternion => quaternion_gens(),
            Family::Gens { ref text, degree } => parse_generators(text, degree)?,
        })
    }

    /// Builds the (lazily materialized) group tagged with this family.
    pub fn build(&self, budgets: &Budgets) -> Result<PermGroup> {
        let g = PermGroup::from_generators(self.generators(budgets)?, budgets.max_group_order)?;
        Ok(g.with_family(self.clone()))
    }
}

fn shift_column(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { line: 1, column, message } => Error::Parse {
            line: 1,
            column: column + offset,
            message,
        },
        other => other,
    }
}

/// Parses and builds a group from a family spec such as `subsets:5,2`.
pub fn build_family(spec: &str, budgets: &Budgets) -> Result<PermGroup> {
    Family::parse(spec)?.build(budgets)
}

fn symmetric_gens(n: usize) -> Vec<Permutation> {
    match n {
        0 | 1 => vec![Permutation::identity(n.max(1))],
        2 => vec![Permutation::from_cycles(2, &[&[0, 1]]).unwrap()],
        _ => vec![
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[&(0..n).collect::<Vec<_>>()]).unwrap(),
        ],
    }
}

fn alternating_gens(n: usize) -> Vec<Permutation> {
    match n {
        0..=2 => vec![Permutation::identity(n.max(1))],
        3 => vec![Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()],
        _ => {
            let long: Vec<usize> = if n % 2 == 1 { (0..n).collect() } else { (1..n).collect() };
            vec![
                Permutation::from_cycles(n, &[&[0, 1, 2]]).unwrap(),
                Permutation::from_cycles(n, &[&long]).unwrap(),
            ]
        }
    }
}

fn lift_all(gens: &[Permutation], m: usize, l: usize, budgets: &Budgets) -> Result<Vec<Permutation>> {
    let index = SubsetIndex::new(m, l, budgets.max_lift_degree)?;
    gens.iter().map(|g| index.lift(g)).collect()
}

/// Left multiplication by `i` and `j` on `Q₈ = {±1, ±i, ±j, ±k}`; element
/// `(sign, unit)` has index `2·unit + sign`.
fn quaternion_gens() -> Vec<Permutation> {
    // unit product table: (negate?, unit) for units 1, i, j, k
    const MUL: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let left = |unit: usize| {
        Permutation::from_images((0..8).map(|x| {
            let (neg, u) = (x % 2 == 1, x / 2);
            let (flip, w) = MUL[unit][u];
            2 * w + usize::from(neg ^ flip)
        }))
        .expect("regular representation")
    };
    vec![left(1), left(2)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(spec: &str) -> usize {
        build_family(spec, &Budgets::default()).unwrap().order_usize().unwrap()
    }

    #[test]
    fn family_orders() {
        assert_eq!(order("cyclic:6"), 6);
        assert_eq!(order("symmetric:5"), 120);
        assert_eq!(order("alternating:5"), 60);
        assert_eq!(order("alternating:6"), 360);
        assert_eq!(order("dihedral:4"), 8);
        assert_eq!(order("subsets:5,2"), 120);
        assert_eq!(order("subsets-alt:5,2"), 60);
        assert_eq!(order("product:3,1,2"), 72);
        assert_eq!(order("wreath-cyclic:2"), 8);
        assert_eq!(order("wreath-cyclic:3"), 24);
        assert_eq!(order("klein"), 4);
        assert_eq!(order("quaternion"), 8);
        assert_eq!(order("trivial:3"), 1);
        assert_eq!(order("gens:(1 2 3);(1 2)"), 6);
    }

    #[test]
    fn family_degrees_and_transitivity() {
        let b = Budgets::default();
        for (spec, n) in [("subsets:5,2", 10), ("product:3,1,2", 9), ("wreath-cyclic:2", 4), ("quaternion", 8)] {
            let g = build_family(spec, &b).unwrap();
            assert_eq!(g.degree(), n, "{spec}");
            assert!(g.is_transitive(), "{spec}");
            assert_eq!(Family::parse(spec).unwrap().degree(&b).unwrap(), n);
        }
    }

    #[test]
    fn quaternion_is_nonabelian_regular() {
        let q = build_family("quaternion", &Budgets::default()).unwrap();
        assert!(!q.is_abelian());
        assert!(q.is_semiregular().unwrap());
        // Q8 has 5 classes and a unique involution
        assert_eq!(q.class_count_usize().unwrap(), 5);
        let involutions = q
            .elements()
            .unwrap()
            .iter()
            .filter(|x| !x.is_identity() && x.compose(x).is_identity())
            .count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn spec_round_trips_through_display() {
        for spec in ["cyclic:3", "subsets-alt:7,3", "product:5,1,2", "klein", "gens:[6](1 2)(3 4)"] {
            assert_eq!(Family::parse(spec).unwrap().to_string(), spec);
        }
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(Family::parse("nope:3"), Err(Error::UnknownFamily(_))));
        assert!(matches!(Family::parse("cyclic"), Err(Error::InvalidParams { .. })));
        assert!(matches!(Family::parse("cyclic:x"), Err(Error::InvalidParams { .. })));
        assert!(matches!(Family::parse("subsets:4,4"), Err(Error::InvalidParams { .. })));
        assert!(matches!(Family::parse("product:5,1,0"), Err(Error::InvalidParams { .. })));
        assert!(matches!(Family::parse("dihedral:2"), Err(Error::InvalidParams { .. })));
        match Family::parse("gens:(1 2)(2 3)") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 12)),
            other => panic!("{other:?}"),
        }
    }
}
