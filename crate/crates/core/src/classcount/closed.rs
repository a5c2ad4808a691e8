use num_bigint::BigUint;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::combinatorics::tuples_of_partitions_count;
use crate::error::{Error, Result};

/// Cyclic top group of degree `n`: exact class number when `n` is prime, and
/// the general upper bound `kⁿ − k + kn`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchmidValue {
    #[serde(with = "crate::classcount::opt_decimal")]
    pub exact: Option<BigUint>,
    #[serde(with = "crate::classcount::decimal")]
    pub upper: BigUint,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn schmid_cyclic(k: u32, n: usize) -> Result<SchmidValue> {
    if n < 2 || k == 0 {
        return Err(Error::Invalid(format!("cyclic closed form needs n ≥ 2 and k ≥ 1, got n={n}, k={k}")));
    }
    let kb = BigUint::from(k);
    let kn: BigUint = Pow::pow(&kb, n);
    let upper = &kn - &kb + &kb * n;
    let exact = is_prime(n as u64).then(|| (&kn - &kb) / n + &kb * n);
    Ok(SchmidValue { exact, upper })
}

/// `k(X ≀ S_n)` for `k(X) = k`: the number of `k`-tuples of partitions of total size `n`.
pub fn symmetric_closed_form(k: u32, n: usize) -> Result<BigUint> {
    tuples_of_partitions_count(k as usize, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schmid_examples() {
        assert_eq!(schmid_cyclic(2, 3).unwrap().exact, Some(8u32.into()));
        assert_eq!(schmid_cyclic(2, 5).unwrap().exact, Some(16u32.into()));
        let four = schmid_cyclic(2, 4).unwrap();
        assert_eq!(four.exact, None);
        assert_eq!(four.upper, 22u32.into());
        assert!(schmid_cyclic(2, 1).is_err());
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(symmetric_closed_form(2, 2).unwrap(), 5u32.into());
        assert_eq!(symmetric_closed_form(2, 3).unwrap(), 10u32.into());
        assert_eq!(symmetric_closed_form(3, 2).unwrap(), 9u32.into());
        assert_eq!(symmetric_closed_form(2, 4).unwrap(), 20u32.into());
    }
}
