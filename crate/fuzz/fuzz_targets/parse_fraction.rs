#![no_main]

use fareymap::arith::Level;
use fareymap::projective::{parse_fraction, FractionLiteral};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // first line is the level, the rest the fraction
    let (level, fraction) = text.split_once('\n').unwrap_or(("7", text));
    let Ok(level) = level.parse::<Level>() else {
        return;
    };
    if let Ok(v) = parse_fraction(fraction, level) {
        let again = parse_fraction(&v.to_string(), level).unwrap();
        assert_eq!(v, again);
        let (b, d) = v.lift_to_unimodular();
        let n = level.get() as u128;
        let det =
            (v.numerator() as u128 * d as u128 + n * n - b as u128 * v.denominator() as u128) % n;
        assert_eq!(det, 1 % n);
    }
    if let Ok(lit) = fraction.parse::<FractionLiteral>() {
        let _ = lit.at_level(level);
    }
});
