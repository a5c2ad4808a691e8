#![no_main]

use libfuzzer_sys::fuzz_target;
use wreathcount::classcount::CountResult;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = CountResult::from_json(text) {
        // re-encoding is stable
        let json = r.to_json();
        let back = CountResult::from_json(&json).expect("own output decodes");
        assert_eq!(back.to_json(), json);
    }
});
