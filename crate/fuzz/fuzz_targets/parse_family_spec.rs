#![no_main]

use libfuzzer_sys::fuzz_target;
use primexp::FamilySpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = text.parse::<FamilySpec>() {
        let again: FamilySpec = spec.to_string().parse().expect("rendered spec parses");
        assert_eq!(again, spec);
        // building may fail on bad parameters but must not panic
        let _ = spec.build();
    }
});
