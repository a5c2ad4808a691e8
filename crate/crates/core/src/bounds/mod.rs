//! Evaluators for the class-number bounds and the structural predicates
//! behind them. Every evaluator returns a [`BoundReport`] recording both
//! sides, the verdict, and whether the comparison was exact.

mod ee11;
mod large_base;
mod scan;
mod semiprimitive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use ee11::{e3_check, ee11_integer_upper, eq_ee11, predicates, resolve_e, ESource, ESourceChoice};
pub use large_base::{
    e14_check, large_base_match, lem100_probe, lem15_check, prop11_bound, prop13_bound, subset_orbit_count,
    Lem100Probe, Lem100Row,
};
pub use scan::{counterexample_scan, scan_csv, ScanRow, SCAN_CSV_HEADER};
pub use semiprimitive::{semiprimitive_report, SemiprimitiveReport};

/// Relative tolerance for floating comparisons.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    /// Both sides agree within [`TOLERANCE`] in a floating comparison.
    Indeterminate,
    /// One side could not be computed within budget.
    Unevaluated,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "true",
            Verdict::Fails => "false",
            Verdict::Indeterminate => "indeterminate",
            Verdict::Unevaluated => "unevaluated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Float,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        }
    }
}

/// A report side: an exact integer or fraction as a decimal string, a
/// binary64 value, or a base-2 logarithm when the value overflows binary64.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum Quantity {
    Exact(String),
    Float(f64),
    Log2(f64),
    Missing,
}

impl Quantity {
    pub fn int(x: &BigUint) -> Self {
        Quantity::Exact(x.to_string())
    }

    pub fn ratio(x: &BigRational) -> Self {
        Quantity::Exact(x.to_string())
    }

    /// `2^l` as a float when representable, else its logarithm.
    pub fn from_log2(l: f64) -> Self {
        if l < 1000.0 {
            Quantity::Float(l.exp2())
        } else {
            Quantity::Log2(l)
        }
    }
}

impl std::fmt::Display for Quantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Quantity::Exact(s) => f.write_str(s),
            Quantity::Float(x) => write!(f, "{x:.6e}"),
            Quantity::Log2(l) => write!(f, "2^{l:.6}"),
            Quantity::Missing => f.write_str("-"),
        }
    }
}

/// Parameters echoed in a report.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_sigma: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub holds: Verdict,
    pub mode: Mode,
    /// The underlying statement only applies beyond an unspecified threshold,
    /// so the verdict is an observation.
    pub asymptotic: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e_source: Option<ESource>,
    pub inputs: Inputs,
    /// Named intermediate quantities.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub terms: Vec<(String, Quantity)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl BoundReport {
    pub(crate) fn new(name: &str, lhs: Quantity, rhs: Quantity, holds: Verdict, mode: Mode, inputs: Inputs) -> Self {
        BoundReport {
            name: name.to_string(),
            lhs,
            rhs,
            holds,
            mode,
            asymptotic: false,
            e_source: None,
            inputs,
            terms: Vec::new(),
            note: None,
        }
    }

    pub(crate) fn asymptotic(mut self) -> Self {
        self.asymptotic = true;
        self
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub(crate) fn with_term(mut self, name: &str, q: Quantity) -> Self {
        self.terms.push((name.to_string(), q));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

pub(crate) fn pow_big(k: u32, e: usize) -> BigUint {
    Pow::pow(&BigUint::from(k), e)
}

pub(crate) fn rational(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

pub(crate) fn int_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// `log₂ x`, accurate to binary64 precision for any size; `-∞` for zero.
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("finite");
    top.log2() + shift as f64
}

/// Verdict for `lhs < rhs` (or `≤`; they only differ inside the tolerance band).
pub(crate) fn float_verdict(lhs: f64, rhs: f64) -> Verdict {
    if (lhs - rhs).abs() <= TOLERANCE * rhs.abs().max(1.0) {
        Verdict::Indeterminate
    } else {
        Verdict::from_bool(lhs < rhs)
    }
}

/// As [`float_verdict`] with both sides given as base-2 logarithms.
pub(crate) fn log2_verdict(lhs: f64, rhs: f64) -> Verdict {
    if lhs == f64::NEG_INFINITY {
        return Verdict::from_bool(rhs > f64::NEG_INFINITY);
    }
    if ((lhs - rhs) * std::f64::consts::LN_2).abs() <= TOLERANCE {
        Verdict::Indeterminate
    } else {
        Verdict::from_bool(lhs < rhs)
    }
}

/// `⌈∛x⌉` exactly.
pub(crate) fn ceil_cbrt(x: &BigUint) -> BigUint {
    let r = x.cbrt();
    if &(&r * &r * &r) == x {
        r
    } else {
        r + 1u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_of_big_values() {
        assert_eq!(log2_big(&BigUint::from(1024u32)), 10.0);
        let huge = pow_big(3, 5000);
        let want = 5000.0 * 3f64.log2();
        assert!((log2_big(&huge) - want).abs() < 1e-9 * want);
    }

    #[test]
    fn cube_root_ceiling() {
        assert_eq!(ceil_cbrt(&BigUint::from(125u32)), BigUint::from(5u32));
        assert_eq!(ceil_cbrt(&BigUint::from(126u32)), BigUint::from(6u32));
        assert_eq!(ceil_cbrt(&pow_big(5, 4)), BigUint::from(9u32));
    }

    #[test]
    fn tolerance_band() {
        assert_eq!(float_verdict(1.0, 2.0), Verdict::Holds);
        assert_eq!(float_verdict(2.0, 1.0), Verdict::Fails);
        assert_eq!(float_verdict(1.0, 1.0 + 1e-12), Verdict::Indeterminate);
        assert_eq!(log2_verdict(10.0, 10.0), Verdict::Indeterminate);
    }

    #[test]
    fn quantity_json() {
        let q = Quantity::Exact("44/3".into());
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(text, r#"{"kind":"exact","value":"44/3"}"#);
        assert_eq!(serde_json::from_str::<Quantity>(&text).unwrap(), q);
    }
}
