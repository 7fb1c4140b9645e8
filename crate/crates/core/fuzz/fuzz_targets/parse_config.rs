#![no_main]

use cmgamma::cli::parse::parse_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(cfg) = parse_config(s) {
            let _ = cfg.param_list();
        }
    }
});
