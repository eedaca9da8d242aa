#![no_main]

use libfuzzer_sys::fuzz_target;
use lie_color::json::{parse_bicharacter, BicharacterJson};

fuzz_target!(|data: &[u8]| {
    // Large groups make validation quadratic in the table size; keep inputs small.
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 4096 {
        return;
    }
    if let Ok(eps) = parse_bicharacter(s, None) {
        let j = BicharacterJson::from_table(&eps);
        assert_eq!(j.to_table().unwrap(), eps);
    }
});
