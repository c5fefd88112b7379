#![no_main]

use fareymap::render::{farey_edges, parse_viewport, RenderSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((x0, x1)) = parse_viewport(text) {
        assert!(x0 < x1 && x0.is_finite() && x1.is_finite());
        if let Ok(spec) = RenderSpec::new(3, x0, x1, 200, 100) {
            if x1 - x0 < 50.0 {
                for ((a, c), (b, d)) in farey_edges(&spec) {
                    assert_eq!((a as i128 * d as i128 - b as i128 * c as i128).abs(), 1);
                }
            }
        }
    }
});
