#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftminor::FieldSpec;

fuzz_target!(|data: &str| {
    if let Ok(field) = data.parse::<FieldSpec>() {
        let again: FieldSpec = field.to_string().parse().expect("rendered field parses");
        assert_eq!(field, again);
    }
});
