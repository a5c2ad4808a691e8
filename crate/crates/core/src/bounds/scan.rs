use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{pow_big, Verdict};
use crate::actions::Family;
use crate::classcount::clifford_count;
use crate::error::{Error, Result};
use crate::Budgets;

pub const SCAN_CSV_HEADER: &str = "param,k,n,order,value,bound,holds,mode";

/// One comparison for one member of the `C₂ ≀ C_m` family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub param: usize,
    pub k: u32,
    pub n: usize,
    pub order: Option<String>,
    pub value: Option<String>,
    /// `name=value`, e.g. `5^m/m=125/3`.
    pub bound: String,
    pub holds: Verdict,
    /// `exact`, or `skipped` when the count exceeded its budget.
    pub mode: String,
}

impl ScanRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.param,
            self.k,
            self.n,
            self.order.as_deref().unwrap_or(""),
            self.value.as_deref().unwrap_or(""),
            self.bound,
            self.holds.as_str(),
            self.mode
        )
    }
}

fn rows_for(m: usize, budgets: &Budgets) -> Result<Vec<ScanRow>> {
    let k = 2u32;
    let n = 2 * m;
    let h = Family::WreathCyclic(m).build(budgets)?;
    let kn = pow_big(k, n);
    let five = pow_big(5, m);
    let ratio = if (&five % m as u64) == BigUint::from(0u32) {
        (&five / m as u64).to_string()
    } else {
        let g = five.gcd(&BigUint::from(m));
        format!("{}/{}", &five / &g, m as u64 / u64::try_from(&g).expect("small"))
    };
    let labels = [
        "ceil(k^n/|H|)".to_string(),
        format!("5^m/m={ratio}"),
        format!("k^n={kn}"),
    ];
    let row = |bound: String, order: Option<String>, value: Option<String>, holds: Verdict, mode: &str| ScanRow {
        param: m,
        k,
        n,
        order,
        value,
        bound,
        holds,
        mode: mode.to_string(),
    };
    match clifford_count(&h, k, budgets) {
        Ok(r) => {
            let order = h.order()?;
            let v = &r.value;
            let lower = Integer::div_ceil(&kn, &order);
            let checks = [
                (format!("{}={lower}", labels[0]), v >= &lower),
                (labels[1].clone(), v * m as u64 >= five),
                (labels[2].clone(), v > &kn),
            ];
            Ok(checks
                .into_iter()
                .map(|(bound, ok)| row(bound, Some(order.to_string()), Some(v.to_string()), Verdict::from_bool(ok), "exact"))
                .collect())
        }
        Err(e) if e.is_budget() => Ok(labels
            .into_iter()
            .map(|bound| row(bound, None, None, Verdict::Unevaluated, "skipped"))
            .collect()),
        Err(e) => Err(e),
    }
}

/// For each `m`, the exact class number of `X ≀ (C₂ ≀ C_m)` with `k(X) = 2`
/// compared with `⌈kⁿ/|H|⌉` (must hold), `5^m/m` and `kⁿ = 4^m` (observations).
/// Instances run on up to `jobs` threads; rows come back in input order.
pub fn counterexample_scan(ms: &[usize], budgets: &Budgets, jobs: usize) -> Result<Vec<ScanRow>> {
    if let Some(&bad) = ms.iter().find(|&&m| m == 0) {
        return Err(Error::params("wreath-cyclic", format!("m must be at least 1, got {bad}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let per_m: Vec<Vec<ScanRow>> = pool.install(|| ms.par_iter().map(|&m| rows_for(m, budgets)).collect::<Result<_>>())?;
    Ok(per_m.into_iter().flatten().collect())
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}
