#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftminor::{FieldSpec, Scalar};

fuzz_target!(|data: &str| {
    let (field, text) = match data.split_once('|') {
        Some((f, t)) => match f.parse::<FieldSpec>() {
            Ok(field) => (field, t),
            Err(_) => return,
        },
        None => (FieldSpec::rationals(), data),
    };
    if let Ok(s) = Scalar::parse(field, text) {
        let again = Scalar::parse(field, &s.to_string()).expect("rendered scalar parses");
        assert_eq!(s, again);
    }
});
