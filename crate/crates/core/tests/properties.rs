mod common;

use common::{closure, cycle_count, wreath_class_count, Perm};
use num_bigint::BigUint;
use proptest::prelude::*;
use wreathcount::actions::CycleType;
use wreathcount::classcount::{
    brute_force_count, burnside_orbit_count, clifford_count, direct_orbit_count, CountResult, Method,
};
use wreathcount::combinatorics::{binomial, fix_subsets_formula};
use wreathcount::{Budgets, PermGroup, Permutation};

fn perm_of_degree(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Up to three random generators on `2..=max_n` points.
fn generator_sets(max_n: usize) -> impl Strategy<Value = Vec<Perm>> {
    (2..=max_n).prop_flat_map(|n| prop::collection::vec(perm_of_degree(n), 1..=3))
}

fn to_group(gens: &[Perm]) -> PermGroup {
    let gens = gens
        .iter()
        .map(|g| Permutation::from_images(g.iter().map(|&x| x as u32)).unwrap())
        .collect();
    PermGroup::from_generators(gens, 1_000_000).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn clifford_matches_brute_and_oracle(gens in generator_sets(4), k in 1u32..=3) {
        let h = to_group(&gens);
        let b = Budgets::default();
        let cl = clifford_count(&h, k, &b).unwrap().value;
        let br = brute_force_count(k, &h, &b).unwrap().value;
        prop_assert_eq!(&cl, &br);
        prop_assert_eq!(cl, BigUint::from(wreath_class_count(k as usize, &gens)));
    }

    #[test]
    fn burnside_matches_direct_and_cycle_index(gens in generator_sets(6), k in 1u32..=3) {
        let h = to_group(&gens);
        let orbits = burnside_orbit_count(&h, k).unwrap();
        prop_assert_eq!(&orbits, &direct_orbit_count(&h, k, &Budgets::default()).unwrap());
        let elements = closure(&gens);
        let fixed: BigUint = elements.iter().map(|p| BigUint::from(k).pow(cycle_count(p) as u32)).sum();
        prop_assert_eq!(orbits * elements.len(), fixed);
    }

    #[test]
    fn orbits_bound_class_number(gens in generator_sets(4), k in 2u32..=3) {
        let h = to_group(&gens);
        let b = Budgets::default();
        let cl = clifford_count(&h, k, &b).unwrap().value;
        prop_assert!(burnside_orbit_count(&h, k).unwrap() <= cl);
    }

    #[test]
    fn fixed_subsets_formula_matches_count(p in (1usize..=8).prop_flat_map(perm_of_degree), l in 1usize..=8) {
        let n = p.len();
        prop_assume!(l <= n);
        let ct = CycleType::of(&Permutation::from_images(p.iter().map(|&x| x as u32)).unwrap());
        let fixed = (0u32..1 << n)
            .filter(|s| s.count_ones() as usize == l)
            .filter(|&s| (0..n).filter(|&i| s >> i & 1 == 1).all(|i| s >> p[i] & 1 == 1))
            .count();
        prop_assert_eq!(fix_subsets_formula(&ct, l).unwrap(), BigUint::from(fixed));
        prop_assert!(BigUint::from(fixed) <= binomial(n as u64, l as u64));
    }

    #[test]
    fn permutation_text_round_trip(p in (1usize..=12).prop_flat_map(perm_of_degree)) {
        let perm = Permutation::from_images(p.iter().map(|&x| x as u32)).unwrap();
        let back = Permutation::parse(&perm.to_string(), Some(p.len())).unwrap();
        prop_assert_eq!(back, perm);
    }

    #[test]
    fn count_result_json_round_trip(digits in "[1-9][0-9]{0,60}", k in 1u32..100, degree in 1usize..50) {
        let r = CountResult {
            k,
            group: format!("cyclic:{degree}"),
            degree,
            group_order: Some(BigUint::from(degree)),
            method: Method::Clifford,
            value: digits.parse().unwrap(),
            orbit_count: None,
            elapsed: Default::default(),
        };
        let text = r.to_json();
        let quoted = format!("\"{}\"", digits);
        prop_assert!(text.contains(&quoted));
        prop_assert_eq!(CountResult::from_json(&text).unwrap(), r);
    }

    #[test]
    fn parsers_never_panic(text in "\\PC{0,40}") {
        let _ = Permutation::parse(&text, None);
        let _ = wreathcount::actions::Family::parse(&text);
        let _ = CountResult::from_json(&text);
    }
}
