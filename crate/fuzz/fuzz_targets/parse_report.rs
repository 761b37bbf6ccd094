#![no_main]

use libfuzzer_sys::fuzz_target;
use primexp::verify::parse_report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rows) = parse_report(text) {
        let mut out = String::new();
        for r in &rows {
            out.push_str(&serde_json::to_string(r).expect("row serializes"));
            out.push('\n');
        }
        assert_eq!(parse_report(&out).expect("re-rendered rows parse"), rows);
    }
});
