//! Parsers for the textual inputs of the command line: parameter lists, grid
//! specs, family names and JSON config files.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Deserialize;

use crate::error::{usage, Result};
use crate::kernels::RatioFamily;

/// Named parameter values in the order they were written.
pub type ParamList = Vec<(String, Vec<f64>)>;

/// Parses `a=1,b=2` and list forms like `a=5,5,b=0,9`.
///
/// Tokens are comma-separated. A token containing `=` starts a new key;
/// a bare token appends to the most recent key.
pub fn parse_params(s: &str) -> Result<ParamList> {
    let mut out: ParamList = Vec::new();
    if s.trim().is_empty() {
        return Ok(out);
    }
    for token in s.split(',') {
        let token = token.trim();
        let (key, value) = match token.split_once('=') {
            Some((k, v)) => {
                let k = k.trim();
                if !is_name(k) {
                    return Err(usage(format!("bad parameter name {k:?}")));
                }
                if out.iter().any(|(name, _)| name == k) {
                    return Err(usage(format!("parameter {k} given twice")));
                }
                out.push((k.to_string(), Vec::new()));
                (k, v)
            }
            None => match out.last() {
                Some((k, _)) => (k.as_str(), token),
                None => return Err(usage(format!("value {token:?} has no parameter name"))),
            },
        };
        let v = parse_number(value).map_err(|_| usage(format!("bad value {value:?} for parameter {key}")))?;
        out.last_mut().expect("a key was pushed").1.push(v);
    }
    Ok(out)
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_number(s: &str) -> std::result::Result<f64, ()> {
    let v: f64 = s.trim().parse().map_err(|_| ())?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `min:max:count[:log|:linear]`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

/// Grids larger than this are rejected; products of several axes are capped
/// separately by the caller.
pub const MAX_GRID_COUNT: usize = 1_000_000;

pub fn parse_grid(s: &str) -> Result<GridSpec> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(usage(format!("grid {s:?} must look like min:max:count[:log]")));
    }
    let min = parse_number(parts[0]).map_err(|_| usage(format!("bad grid minimum {:?}", parts[0])))?;
    let max = parse_number(parts[1]).map_err(|_| usage(format!("bad grid maximum {:?}", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| usage(format!("bad grid count {:?}", parts[2])))?;
    let spacing = match parts.get(3).copied() {
        None | Some("linear") | Some("lin") => Spacing::Linear,
        Some("log") => Spacing::Log,
        Some(other) => return Err(usage(format!("unknown grid spacing {other:?}, expected log or linear"))),
    };
    let spec = GridSpec { min, max, count, spacing };
    spec.validate()?;
    Ok(spec)
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 || self.count > MAX_GRID_COUNT {
            return Err(usage(format!("grid count must be in 1..={MAX_GRID_COUNT}, got {}", self.count)));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(usage(format!("grid needs finite min <= max, got {}:{}", self.min, self.max)));
        }
        if self.count == 1 && self.min != self.max {
            return Err(usage("a one-point grid needs min == max"));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(usage("log-spaced grids need min > 0"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = (self.count - 1) as f64;
        let mut pts: Vec<f64> = (0..self.count)
            .map(|i| {
                let s = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.min + (self.max - self.min) * s,
                    Spacing::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * s).exp(),
                }
            })
            .collect();
        pts[0] = self.min;
        pts[self.count - 1] = self.max;
        pts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    TwoParam,
    MultiParam,
    Majorized,
    Symmetric,
}

pub fn parse_family(s: &str) -> Result<FamilyKind> {
    match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
        "two-param" | "twoparam" => Ok(FamilyKind::TwoParam),
        "multi-param" | "multiparam" => Ok(FamilyKind::MultiParam),
        "majorized" => Ok(FamilyKind::Majorized),
        "symmetric" => Ok(FamilyKind::Symmetric),
        _ => Err(usage(format!(
            "unknown family {s:?}, expected two-param, multi-param, majorized or symmetric"
        ))),
    }
}

impl FamilyKind {
    /// Builds the family from named parameters; every name must be used.
    pub fn build(self, params: &ParamList) -> Result<RatioFamily> {
        let get = |name: &str| params.iter().find(|(k, _)| k == name).map(|(_, v)| v.clone());
        let scalar = |name: &str| -> Result<f64> {
            match get(name).as_deref() {
                Some([v]) => Ok(*v),
                Some(_) => Err(usage(format!("parameter {name} takes a single value"))),
                None => Err(usage(format!("missing parameter {name}"))),
            }
        };
        let list = |name: &str| get(name).ok_or_else(|| usage(format!("missing parameter {name}")));
        let allowed: &[&str] = match self {
            FamilyKind::TwoParam | FamilyKind::Majorized => &["a", "b"],
            FamilyKind::MultiParam | FamilyKind::Symmetric => &["a"],
        };
        if let Some((k, _)) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            return Err(usage(format!("unexpected parameter {k} for this family")));
        }
        let fam = match self {
            FamilyKind::TwoParam => RatioFamily::TwoParam { a: scalar("a")?, b: scalar("b")? },
            FamilyKind::MultiParam => RatioFamily::MultiParam { a: list("a")? },
            FamilyKind::Majorized => RatioFamily::Majorized { a: list("a")?, b: list("b")? },
            FamilyKind::Symmetric => RatioFamily::Symmetric { a: scalar("a")? },
        };
        fam.validate()?;
        Ok(fam)
    }
}

/// A parameter value in a config file: a number or a list of numbers.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    One(f64),
    Many(Vec<f64>),
}

/// Settings read from `--config`. Every field is optional; command-line
/// flags take precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub ids: Option<Vec<String>>,
    pub family: Option<String>,
    pub topic: Option<String>,
    pub params: Option<BTreeMap<String, ParamValue>>,
    pub grid: Option<Vec<String>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
    pub tol: Option<f64>,
    pub n_max: Option<u32>,
    pub h: Option<f64>,
}

pub fn parse_config(s: &str) -> Result<FileConfig> {
    serde_json::from_str(s).map_err(|e| usage(format!("bad config file: {e}")))
}

impl FileConfig {
    pub fn param_list(&self) -> ParamList {
        self.params
            .iter()
            .flatten()
            .map(|(k, v)| match v {
                ParamValue::One(x) => (k.clone(), vec![*x]),
                ParamValue::Many(xs) => (k.clone(), xs.clone()),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_scalars_and_lists() {
        let p = parse_params("a=1,b=2.5").unwrap();
        assert_eq!(p, vec![("a".into(), vec![1.0]), ("b".into(), vec![2.5])]);
        let p = parse_params("a=5,5,b=0,9").unwrap();
        assert_eq!(p, vec![("a".into(), vec![5.0, 5.0]), ("b".into(), vec![0.0, 9.0])]);
        assert!(parse_params("").unwrap().is_empty());
    }

    #[test]
    fn params_rejects_garbage() {
        for bad in ["1,2", "a=", "a=x", "a=1,a=2", "=1", "a=inf", "a=1,,2", "1a=3"] {
            assert!(parse_params(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_linear_and_log() {
        let g = parse_grid("1:3:3").unwrap();
        assert_eq!(g.points(), vec![1.0, 2.0, 3.0]);
        let g = parse_grid("1:100:3:log").unwrap();
        let p = g.points();
        assert_eq!((p[0], p[2]), (1.0, 100.0));
        assert!((p[1] - 10.0).abs() < 1e-12);
        assert_eq!(parse_grid("2:2:1").unwrap().points(), vec![2.0]);
    }

    #[test]
    fn grid_rejects_garbage() {
        for bad in ["", "1:2", "1:2:0", "2:1:5", "0:1:3:log", "1:2:3:cubic", "a:b:c", "1:2:-1", "1:2:1"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn family_names() {
        assert_eq!(parse_family("two-param").unwrap(), FamilyKind::TwoParam);
        assert_eq!(parse_family("multi_param").unwrap(), FamilyKind::MultiParam);
        assert!(parse_family("triple").is_err());
        let fam = FamilyKind::Majorized.build(&parse_params("a=3,1,b=2,2").unwrap()).unwrap();
        assert_eq!(fam, RatioFamily::Majorized { a: vec![3.0, 1.0], b: vec![2.0, 2.0] });
        assert!(FamilyKind::TwoParam.build(&parse_params("a=1").unwrap()).is_err());
        assert!(FamilyKind::Symmetric.build(&parse_params("a=1,c=2").unwrap()).is_err());
    }

    #[test]
    fn config_json() {
        let c = parse_config(r#"{"ids":["INQ1"],"params":{"a":1,"b":[2,3]},"grid":["1:2:3"],"seed":7}"#).unwrap();
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.param_list(), vec![("a".into(), vec![1.0]), ("b".into(), vec![2.0, 3.0])]);
        assert!(parse_config(r#"{"unknown":1}"#).is_err());
        assert!(parse_config("not json").is_err());
    }
}
