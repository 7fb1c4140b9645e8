#![no_main]

use cmgamma::cli::parse::parse_grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(g) = parse_grid(s) {
            if g.count <= 10_000 {
                let pts = g.points();
                assert_eq!(pts.len(), g.count);
                assert!(pts.iter().all(|p| p.is_finite()));
            }
        }
    }
});
