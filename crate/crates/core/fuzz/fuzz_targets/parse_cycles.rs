#![no_main]

use libfuzzer_sys::fuzz_target;
use wreathcount::permgroup::parse_generators;
use wreathcount::Permutation;

fuzz_target!(|data: &[u8]| {
    // first byte picks an explicit degree (0 means infer it)
    let Some((&d, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let degree = (d != 0).then_some(d as usize);
    if let Ok(p) = Permutation::parse(text, degree) {
        // printing and reparsing at the same degree is the identity
        let again = Permutation::parse(&p.to_string(), Some(p.degree())).expect("own output parses");
        assert_eq!(again, p);
    }
    if let Ok(gens) = parse_generators(text, degree) {
        assert!(!gens.is_empty());
        assert!(gens.iter().all(|g| g.degree() == gens[0].degree()));
    }
});
