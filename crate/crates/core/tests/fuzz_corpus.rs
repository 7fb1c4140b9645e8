//! Every checked-in fuzz seed must parse cleanly.

use std::fs;
use std::path::Path;

use cmgamma::cli::{parse_config, parse_family, parse_grid, parse_params};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.display().to_string(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn grid_seeds_parse() {
    for (name, s) in seeds("parse_grid") {
        parse_grid(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn params_seeds_parse() {
    for (name, s) in seeds("parse_params") {
        parse_params(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn family_seeds_build() {
    for (name, s) in seeds("parse_family") {
        let (fam, params) = s.split_once('|').unwrap();
        let params = parse_params(params).unwrap_or_else(|e| panic!("{name}: {e}"));
        parse_family(fam).and_then(|k| k.build(&params)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn config_seeds_parse() {
    for (name, s) in seeds("parse_config") {
        parse_config(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
