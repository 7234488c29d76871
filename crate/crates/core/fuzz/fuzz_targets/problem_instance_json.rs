#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftminor::ProblemInstance;

fuzz_target!(|data: &str| {
    if let Ok(inst) = ProblemInstance::from_json_str(data) {
        let again = ProblemInstance::from_json_str(&inst.to_json().to_string()).expect("rendered instance parses");
        assert_eq!(inst, again);
    }
});
