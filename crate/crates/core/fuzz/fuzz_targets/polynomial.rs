#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftminor::{FieldSpec, MonomialOrder, PolyRing, Polynomial};

fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let nvars = usize::from(head % 8) + 1;
    let order = MonomialOrder::ALL[usize::from(head >> 3) % 3];
    let field = if head & 0x80 == 0 {
        FieldSpec::rationals()
    } else {
        FieldSpec::prime(10007).unwrap()
    };
    let ring = PolyRing::new(nvars, order, field);
    if let Ok(p) = Polynomial::parse(ring, text) {
        let again = Polynomial::parse(ring, &p.to_string()).expect("rendered polynomial parses");
        assert_eq!(p, again);
    }
});
