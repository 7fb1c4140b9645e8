#![no_main]

use cmgamma::cli::parse::{parse_family, parse_params};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let (name, params) = s.split_once('|').unwrap_or((s, ""));
        if let (Ok(kind), Ok(params)) = (parse_family(name), parse_params(params)) {
            let _ = kind.build(&params);
        }
    }
});
