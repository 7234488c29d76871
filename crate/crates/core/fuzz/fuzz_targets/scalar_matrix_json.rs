#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftminor::ScalarMatrix;

fuzz_target!(|data: &str| {
    if let Ok(m) = ScalarMatrix::from_json_str(data) {
        let again = ScalarMatrix::from_json_str(&m.to_json().to_string()).expect("rendered matrix parses");
        assert_eq!(m, again);
        if m.rows() <= 8 && m.rows() == m.cols() {
            let _ = m.determinant();
        }
        let _ = m.rank();
    }
});
