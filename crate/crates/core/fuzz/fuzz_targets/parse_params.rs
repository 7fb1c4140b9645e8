#![no_main]

use cmgamma::cli::parse::parse_params;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(list) = parse_params(s) {
            assert!(list.iter().all(|(_, v)| !v.is_empty() && v.iter().all(|x| x.is_finite())));
        }
    }
});
