#![no_main]

use libfuzzer_sys::fuzz_target;
use lie_color::grading::GradingGroup;
use lie_color::json::{parse_dims, parse_tuple, tuple_from_json, tuple_json};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_dims(s);
    for group in [GradingGroup::cyclic(3).unwrap(), GradingGroup::new(vec![2, 2]).unwrap()] {
        if let Ok(t) = parse_tuple(s, &group) {
            assert_eq!(tuple_from_json(&group, &tuple_json(&t)).unwrap(), t);
        }
    }
});
