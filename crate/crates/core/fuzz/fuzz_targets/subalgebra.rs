#![no_main]

use libfuzzer_sys::fuzz_target;
use lie_color::grading::GradingGroup;
use lie_color::json::{parse_subalgebra, SubalgebraJson};
use lie_color::scalars::FieldSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let group = GradingGroup::cyclic(2).unwrap();
    let field = FieldSpec::new(5, 2).unwrap();
    if let Ok(a) = parse_subalgebra(s, &group, field) {
        let j = SubalgebraJson::from_subalgebra(&a);
        let back = j.to_subalgebra(&group, field).expect("serialized subalgebra re-parses");
        assert_eq!(back, a);
    }
});
