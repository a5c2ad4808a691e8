//! The class number `k(X ≀ H)` as a function of `k = k(X)` and `H`.

mod brute;
mod burnside;
mod census;
mod closed;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

pub use brute::{brute_force_class_count, build_wreath_group};
pub use burnside::{burnside_orbit_count, divide_exact, weighted_power_sum};
pub use census::{coloring_space, direct_orbit_count, orbit_census, Census, Enumeration, StabilizerStat};
pub(crate) use census::meets;
pub use closed::{is_prime, schmid_cyclic, symmetric_closed_form, SchmidValue};

use crate::actions::Family;
use crate::error::{Error, Result};
use crate::{Budgets, PermGroup};

/// Serde adapter writing a `BigUint` as a decimal string.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(serde::de::Error::custom(format!("not a decimal integer: {s:?}")));
        }
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// [`decimal`] for optional values.
pub mod opt_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        v.map(|s| {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(serde::de::Error::custom(format!("not a decimal integer: {s:?}")));
            }
            s.parse().map_err(serde::de::Error::custom)
        })
        .transpose()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Clifford,
    Brute,
    /// The orbit count, a lower bound for the class number.
    BurnsideLower,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Clifford => "clifford",
            Method::Brute => "brute",
            Method::BurnsideLower => "burnside-lower",
            Method::ClosedForm => "closed-form",
        }
    }
}

/// One computed class number. `elapsed` is not serialized, so JSON output
/// is reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountResult {
    pub k: u32,
    pub group: String,
    pub degree: usize,
    #[serde(with = "opt_decimal", default)]
    pub group_order: Option<BigUint>,
    pub method: Method,
    #[serde(with = "decimal")]
    pub value: BigUint,
    #[serde(with = "opt_decimal", default)]
    pub orbit_count: Option<BigUint>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CountResult {
    fn new(k: u32, h: &PermGroup, method: Method, value: BigUint, started: Instant) -> Self {
        CountResult {
            k,
            group: group_label(h),
            degree: h.degree(),
            group_order: h.is_materialized().then(|| h.order().expect("materialized")),
            method,
            value,
            orbit_count: None,
            elapsed: started.elapsed(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("count result: {e}")))
    }
}

/// The family spec when known, else the generators as a `gens:` spec.
pub fn group_label(h: &PermGroup) -> String {
    match h.family() {
        Some(f) => f.to_string(),
        None => {
            let text: Vec<String> = h.generators().iter().map(|g| g.to_string()).collect();
            Family::Gens {
                text: text.join(";"),
                degree: Some(h.degree()),
            }
            .to_string()
        }
    }
}

/// Regular versus non-regular orbit statistics of `H` on `k`-colorings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitStats {
    #[serde(with = "decimal")]
    pub total_orbits: BigUint,
    /// `t`, the number of orbits of size less than `|H|`.
    #[serde(with = "decimal")]
    pub nonregular_orbits: BigUint,
    /// `|Δ|`, the points in non-regular orbits.
    #[serde(with = "decimal")]
    pub delta_size: BigUint,
    /// `2·k^{max σ}`, absent for trivial `H`.
    #[serde(with = "opt_decimal")]
    pub orbit_bound: Option<BigUint>,
    /// `(|H|−1)·k^{max σ}`, absent for trivial `H`.
    #[serde(with = "opt_decimal")]
    pub delta_bound: Option<BigUint>,
}

impl OrbitStats {
    /// `t < 2k^{max σ}` and `|Δ| ≤ (|H|−1)k^{max σ}`.
    pub fn bounds_hold(&self) -> bool {
        self.orbit_bound.as_ref().is_none_or(|b| &self.nonregular_orbits < b)
            && self.delta_bound.as_ref().is_none_or(|b| &self.delta_size <= b)
    }
}

fn max_sigma(h: &PermGroup) -> Result<Option<usize>> {
    Ok(h.elements()?
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| x.cycle_count())
        .max())
}

/// Census plus the `t` and `|Δ|` bounds; errors if either bound fails, since
/// both hold for every group.
pub fn nonregular_orbit_stats(h: &PermGroup, k: u32, budgets: &Budgets) -> Result<OrbitStats> {
    let census = orbit_census(h, k, budgets)?;
    let kb = BigUint::from(k);
    let bounds = max_sigma(h)?.map(|s| {
        let pow: BigUint = Pow::pow(&kb, s);
        (BigUint::from(2u32) * &pow, BigUint::from(census.group_order - 1) * pow)
    });
    let stats = OrbitStats {
        total_orbits: census.total_orbits.into(),
        nonregular_orbits: census.nonregular_orbits.into(),
        delta_size: census.delta_size.into(),
        orbit_bound: bounds.as_ref().map(|b| b.0.clone()),
        delta_bound: bounds.map(|b| b.1),
    };
    if !stats.bounds_hold() {
        return Err(Error::Invalid(format!("non-regular orbit bound violated: {stats:?}")));
    }
    Ok(stats)
}

/// Sum of stabilizer class numbers over one representative per orbit.
pub fn clifford_count(h: &PermGroup, k: u32, budgets: &Budgets) -> Result<CountResult> {
    let started = Instant::now();
    let census = orbit_census(h, k, budgets)?;
    let mut out = CountResult::new(k, h, Method::Clifford, census.class_sum.into(), started);
    out.orbit_count = Some(census.total_orbits.into());
    Ok(out)
}

pub fn brute_force_count(k: u32, h: &PermGroup, budgets: &Budgets) -> Result<CountResult> {
    let started = Instant::now();
    let value = brute_force_class_count(k, h, budgets)?;
    Ok(CountResult::new(k, h, Method::Brute, value, started))
}

/// The orbit count alone, reported as a lower bound on the class number.
pub fn burnside_lower(h: &PermGroup, k: u32) -> Result<CountResult> {
    let started = Instant::now();
    let f = burnside_orbit_count(h, k)?;
    let mut out = CountResult::new(k, h, Method::BurnsideLower, f.clone(), started);
    out.orbit_count = Some(f);
    Ok(out)
}

/// A closed form when `H` is trivial, cyclic of prime degree, or symmetric
/// (by family metadata), else `None`.
pub fn closed_form_count(h: &PermGroup, k: u32) -> Result<Option<CountResult>> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let started = Instant::now();
    let n = h.degree();
    let value = if h.is_trivial() {
        Some(Pow::pow(&BigUint::from(k), n))
    } else {
        match h.family() {
            Some(Family::Cyclic(p)) => schmid_cyclic(k, *p)?.exact,
            Some(Family::Symmetric(m)) => Some(symmetric_closed_form(k, *m)?),
            _ => None,
        }
    };
    Ok(value.map(|v| CountResult::new(k, h, Method::ClosedForm, v, started)))
}

/// Closed form, else Clifford, else brute force. When none is feasible the
/// error carries the bracket `[⌈kⁿ/|H|⌉, ⌈ee11 bound⌉ − 1]`.
pub fn auto_count(h: &PermGroup, k: u32, budgets: &Budgets) -> Result<CountResult> {
    if let Some(r) = closed_form_count(h, k)? {
        return Ok(r);
    }
    match clifford_count(h, k, budgets) {
        Err(e) if e.is_budget() => {}
        other => return other,
    }
    match brute_force_count(k, h, budgets) {
        Err(e) if e.is_budget() => {}
        other => return other,
    }
    let order = h.order()?;
    let kn: BigUint = Pow::pow(&BigUint::from(k), h.degree());
    let lower = Integer::div_ceil(&kn, &order);
    let upper = crate::bounds::ee11_integer_upper(h, k, budgets)?;
    Err(Error::Infeasible {
        lower: lower.to_string(),
        upper: upper.to_string(),
    })
}

/// Every feasible method; errors unless all values agree.
pub fn count_all(h: &PermGroup, k: u32, budgets: &Budgets) -> Result<Vec<CountResult>> {
    let mut out = Vec::new();
    if let Some(r) = closed_form_count(h, k)? {
        out.push(r);
    }
    for attempt in [clifford_count(h, k, budgets), brute_force_count(k, h, budgets)] {
        match attempt {
            Ok(r) => out.push(r),
            Err(e) if e.is_budget() => {}
            Err(e) => return Err(e),
        }
    }
    if out.is_empty() {
        return auto_count(h, k, budgets).map(|r| vec![r]);
    }
    if let Some(bad) = out.iter().find(|r| r.value != out[0].value) {
        return Err(Error::Invalid(format!(
            "methods disagree: {} gives {}, {} gives {}",
            out[0].method.as_str(),
            out[0].value,
            bad.method.as_str(),
            bad.value
        )));
    }
    Ok(out)
}

/// `⌈kⁿ/|H|⌉`
pub fn orbit_lower_bound(h: &PermGroup, k: u32) -> Result<BigUint> {
    let kn: BigUint = Pow::pow(&BigUint::from(k), h.degree());
    Ok(Integer::div_ceil(&kn, &h.order()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::build_family;

    fn group(spec: &str) -> PermGroup {
        build_family(spec, &Budgets::default()).unwrap()
    }

    #[test]
    fn clifford_examples() {
        let b = Budgets::default();
        for (spec, k, want) in [("cyclic:2", 2, 5u32), ("symmetric:3", 2, 10), ("cyclic:3", 2, 8), ("cyclic:2", 3, 9)] {
            let r = clifford_count(&group(spec), k, &b).unwrap();
            assert_eq!(r.value, want.into(), "{spec} k={k}");
            assert!(r.value >= *r.orbit_count.as_ref().unwrap());
        }
    }

    #[test]
    fn auto_dispatch() {
        let b = Budgets::default();
        let s4 = auto_count(&group("symmetric:4"), 2, &b).unwrap();
        assert_eq!((s4.method, s4.value.clone()), (Method::ClosedForm, 20u32.into()));
        let c5 = auto_count(&group("cyclic:5"), 2, &b).unwrap();
        assert_eq!((c5.method, c5.value), (Method::ClosedForm, 16u32.into()));
        let t = auto_count(&group("trivial:1"), 5, &b).unwrap();
        assert_eq!(t.value, 5u32.into());
        let d4 = auto_count(&group("dihedral:4"), 2, &b).unwrap();
        assert_eq!(d4.method, Method::Clifford);
    }

    #[test]
    fn infeasible_reports_bracket() {
        let b = Budgets {
            max_coloring_space: 16,
            max_group_order: 100,
            ..Budgets::default()
        };
        match auto_count(&group("dihedral:6"), 2, &b).unwrap_err() {
            Error::Infeasible { lower, upper } => {
                assert_eq!(lower, "6");
                let (lo, hi): (u64, u64) = (lower.parse().unwrap(), upper.parse().unwrap());
                assert!(lo <= hi);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn orbit_stats_examples() {
        let b = Budgets::default();
        let s = nonregular_orbit_stats(&group("cyclic:2"), 2, &b).unwrap();
        assert_eq!((s.nonregular_orbits, s.delta_size), (2u32.into(), 2u32.into()));
        assert_eq!(s.orbit_bound, Some(4u32.into()));
        let s = nonregular_orbit_stats(&group("symmetric:3"), 2, &b).unwrap();
        assert_eq!((s.nonregular_orbits, s.delta_size), (4u32.into(), 8u32.into()));
    }

    #[test]
    fn json_round_trip() {
        let r = clifford_count(&group("cyclic:4"), 3, &Budgets::default()).unwrap();
        let text = r.to_json();
        assert!(!text.contains("elapsed"));
        let back = CountResult::from_json(&text).unwrap();
        assert_eq!(back.value, r.value);
        assert_eq!(back.to_json(), text);
        assert!(CountResult::from_json(&text.replace("\"value\":\"", "\"value\":\"-")).is_err());
    }

    #[test]
    fn count_all_agrees() {
        let rs = count_all(&group("symmetric:3"), 3, &Budgets::default()).unwrap();
        assert_eq!(rs.len(), 3);
    }
}
