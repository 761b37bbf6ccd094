#![no_main]

use libfuzzer_sys::fuzz_target;
use primexp::BoolMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(m) = BoolMatrix::parse(text) {
        let again = BoolMatrix::parse(&m.serialize()).expect("serialized matrix parses");
        assert_eq!(again, m);
    }
});
