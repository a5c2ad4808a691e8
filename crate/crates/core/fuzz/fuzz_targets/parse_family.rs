#![no_main]

use libfuzzer_sys::fuzz_target;
use wreathcount::actions::Family;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(fam) = Family::parse(text) {
        // the printed spec parses back to the same family
        let printed = fam.to_string();
        assert_eq!(Family::parse(&printed).expect("own output parses"), fam);
    }
});
