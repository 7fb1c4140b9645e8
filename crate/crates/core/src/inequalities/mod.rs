//! Registry of gamma-ratio inequalities, each evaluated as a log-space margin
//! that is nonnegative exactly when the claim holds.
//!
//! Every case splits its coordinates into *parameters* (fixed for a sweep)
//! and a *point* (varied over a grid). A case compares a gamma expression,
//! the *target*, against a *bound*: [`Side::Lower`] claims `target ≥ bound`,
//! [`Side::Upper`] claims `target ≤ bound`.

mod catalog;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use rand::RngCore;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, usage, Result};
use crate::specfun;

/// A record holds when its margin is at least `-HOLDS_TOL`.
pub const HOLDS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `target ≥ bound`
    Lower,
    /// `target ≤ bound`
    Upper,
}

/// Shape of a case's parameter vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    /// Exactly these names, in order.
    Fixed(&'static [&'static str]),
    /// One nonempty list, named `a1, a2, ...`.
    List(&'static str),
    /// Two lists of the same length, concatenated: `a1..an, b1..bn`.
    PairedLists(&'static str, &'static str),
}

impl Arity {
    pub fn check(&self, len: usize) -> Result<()> {
        let ok = match self {
            Arity::Fixed(names) => len == names.len(),
            Arity::List(_) => len >= 1,
            Arity::PairedLists(..) => len >= 2 && len.is_multiple_of(2),
        };
        if ok {
            Ok(())
        } else {
            Err(usage(format!("expected parameters {}, got {len} values", self.describe())))
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Arity::Fixed([]) => "(none)".to_string(),
            Arity::Fixed(names) => names.join(","),
            Arity::List(name) => format!("{name}1..{name}n"),
            Arity::PairedLists(a, b) => format!("{a}1..{a}n,{b}1..{b}n"),
        }
    }

    /// Coordinate names for a parameter vector of length `len`.
    pub fn names(&self, len: usize) -> Vec<String> {
        match self {
            Arity::Fixed(names) => names.iter().map(|s| s.to_string()).collect(),
            Arity::List(name) => (1..=len).map(|i| format!("{name}{i}")).collect(),
            Arity::PairedLists(a, b) => {
                let half = len / 2;
                (1..=half)
                    .map(|i| format!("{a}{i}"))
                    .chain((1..=half).map(|i| format!("{b}{i}")))
                    .collect()
            }
        }
    }
}

/// Log values of both sides and the oriented margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub lhs_log: f64,
    pub rhs_log: f64,
    pub margin: f64,
}

impl Evaluation {
    /// `target ≥ bound`, margin taken as the plain difference.
    pub fn lower(target: f64, bound: f64) -> Self {
        Self { lhs_log: target, rhs_log: bound, margin: target - bound }
    }

    /// `target ≤ bound`, margin taken as the plain difference.
    pub fn upper(target: f64, bound: f64) -> Self {
        Self { lhs_log: target, rhs_log: bound, margin: bound - target }
    }

    /// Either side, with a margin computed separately (usually by folding all
    /// gamma terms of both sides into one sum to avoid cancellation).
    pub fn with_margin(target: f64, bound: f64, margin: f64) -> Self {
        Self { lhs_log: target, rhs_log: bound, margin }
    }
}

pub type DomainFn = fn(&[f64], &[f64]) -> std::result::Result<(), String>;
pub type EvalFn = fn(&[f64], &[f64]) -> Evaluation;
pub type SampleFn = fn(&mut dyn RngCore) -> (Vec<f64>, Vec<f64>);

/// One registered inequality.
#[derive(Clone)]
pub struct InequalityCase {
    pub id: &'static str,
    pub params: Arity,
    pub point: &'static [&'static str],
    pub side: Side,
    /// The gamma expression being bounded; cases with equal targets can be
    /// ranked against each other.
    pub target: &'static str,
    pub bound: &'static str,
    pub domain_text: &'static str,
    /// Reference bounds kept for comparison; not claimed to hold everywhere.
    pub baseline: bool,
    /// `Err` carries the violated constraint. Must not panic for any finite input.
    pub domain: DomainFn,
    /// Only called on inputs accepted by `domain`.
    pub eval: EvalFn,
    /// Draws `(params, point)` inside the domain.
    pub sample: SampleFn,
}

impl std::fmt::Debug for InequalityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("InequalityCase").field("id", &self.id).finish_non_exhaustive()
    }
}

impl InequalityCase {
    pub fn statement(&self) -> String {
        let rel = match self.side {
            Side::Lower => ">=",
            Side::Upper => "<=",
        };
        format!("{} {rel} {}", self.target, self.bound)
    }

    pub fn summary(&self) -> CaseSummary {
        CaseSummary {
            id: self.id,
            params: self.params.describe(),
            point: self.point.join(","),
            side: self.side,
            statement: self.statement(),
            domain: self.domain_text,
            baseline: self.baseline,
        }
    }

    /// Arity and finiteness checks, then the case's own predicate.
    pub fn check_domain(&self, params: &[f64], point: &[f64]) -> Result<()> {
        self.check_shape(params, point)?;
        if let Some(v) = params.iter().chain(point).find(|v| !v.is_finite()) {
            return Err(domain(format!("{}: all coordinates must be finite, got {v}", self.id)));
        }
        (self.domain)(params, point).map_err(|m| domain(format!("{}: requires {m}", self.id)))
    }

    fn check_shape(&self, params: &[f64], point: &[f64]) -> Result<()> {
        self.params.check(params.len()).map_err(|e| usage(format!("{}: {e}", self.id)))?;
        if point.len() != self.point.len() {
            return Err(usage(format!(
                "{}: expected point ({}), got {} values",
                self.id,
                self.point.join(","),
                point.len()
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, params: &[f64], point: &[f64]) -> Result<Evaluation> {
        self.check_domain(params, point)?;
        Ok((self.eval)(params, point))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseSummary {
    pub id: &'static str,
    pub params: String,
    pub point: String,
    pub side: Side,
    pub statement: String,
    pub domain: &'static str,
    pub baseline: bool,
}

/// Named coordinates. Serializes as a map in insertion order and displays
/// as `a=1;b=2`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Coords(pub Vec<(String, f64)>);

impl Coords {
    pub fn new(names: Vec<String>, values: &[f64]) -> Self {
        Self(names.into_iter().zip(values.iter().copied()).collect())
    }

    pub fn values(&self) -> Vec<f64> {
        self.0.iter().map(|(_, v)| *v).collect()
    }
}

impl std::fmt::Display for Coords {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Coords {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub id: String,
    pub params: Coords,
    pub point: Coords,
    pub lhs_log: f64,
    pub rhs_log: f64,
    pub margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundValue {
    pub id: String,
    pub bound_log: f64,
    pub bound: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TightnessReport {
    pub target: String,
    pub side: Side,
    pub target_log: f64,
    pub target_value: f64,
    /// In the order the ids were given.
    pub bounds: Vec<BoundValue>,
    /// Ids from tightest to loosest.
    pub ranking: Vec<String>,
    pub tightest: String,
}

/// Group names accepted wherever an id is expected.
const GROUPS: &[(&str, &[&str])] = &[
    ("MEAN2", &["MEAN2", "MEAN2_RECIP"]),
    ("INQ3", &["INQ3_LB", "INQ3_UB"]),
    ("SYM_SANDWICH", &["SYM_SANDWICH_LB", "SYM_SANDWICH_UB"]),
    (
        "HALF_SANDWICH",
        &["HALF_SANDWICH_LB", "HALF_SANDWICH_UB", "WALLIS_LB", "WALLIS_UB", "WALLIS_Z_LB", "WALLIS_Z_UB"],
    ),
    ("PSI", &["PSI_XY", "PSI_XY_AB"]),
    ("BETA", &["BETA_UB", "BETA_UB_SHIFT_B", "BETA_UB_SHIFT_A"]),
    ("DUP_SANDWICH", &["DUP_SANDWICH_LB", "DUP_SANDWICH_UB"]),
    ("INQ57", &["INQ57_LB", "INQ57_UB"]),
    ("INQ58_BASELINES", &["INQ580", "INQ581"]),
];

/// An immutable collection of cases with unique ids.
#[derive(Debug, Clone)]
pub struct Registry {
    cases: Vec<InequalityCase>,
}

impl Registry {
    pub fn new(cases: Vec<InequalityCase>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &cases {
            if !seen.insert(c.id) {
                return Err(usage(format!("duplicate inequality id {}", c.id)));
            }
        }
        Ok(Self { cases })
    }

    /// The built-in registry.
    pub fn standard() -> &'static Registry {
        static REG: OnceLock<Registry> = OnceLock::new();
        REG.get_or_init(|| Registry::new(catalog::cases()).expect("built-in ids are unique"))
    }

    pub fn cases(&self) -> &[InequalityCase] {
        &self.cases
    }

    pub fn get(&self, id: &str) -> Result<&InequalityCase> {
        self.cases
            .iter()
            .find(|c| c.id == id)
            .ok_or_else(|| usage(format!("unknown inequality id {id:?}")))
    }

    /// Resolves ids and group names, keeping first occurrences in order.
    /// Exact ids take precedence over group names.
    pub fn expand(&self, ids: &[&str]) -> Result<Vec<&InequalityCase>> {
        let mut names: Vec<&str> = Vec::new();
        for &id in ids {
            if self.cases.iter().any(|c| c.id == id) {
                names.push(id);
            } else if let Some((_, members)) = GROUPS.iter().find(|(g, _)| *g == id) {
                names.extend_from_slice(members);
            } else {
                return Err(usage(format!("unknown inequality id {id:?}")));
            }
        }
        let mut out: Vec<&InequalityCase> = Vec::new();
        for name in names {
            let case = self.get(name)?;
            if !out.iter().any(|o| o.id == case.id) {
                out.push(case);
            }
        }
        if out.is_empty() {
            return Err(usage("no inequality ids given"));
        }
        Ok(out)
    }

    pub fn list(&self) -> Vec<CaseSummary> {
        self.cases.iter().map(InequalityCase::summary).collect()
    }

    pub fn margin(&self, id: &str, params: &[f64], point: &[f64]) -> Result<f64> {
        Ok(self.get(id)?.evaluate(params, point)?.margin)
    }

    pub fn evaluate(&self, id: &str, params: &[f64], point: &[f64]) -> Result<Evaluation> {
        self.get(id)?.evaluate(params, point)
    }

    /// Evaluates `id` at every grid point. Points outside the domain are
    /// skipped and counted; records come back sorted by point.
    pub fn sweep(&self, id: &str, params: &[f64], grid: &[Vec<f64>]) -> Result<SweepOutcome> {
        let case = self.get(id)?;
        case.params.check(params.len()).map_err(|e| usage(format!("{id}: {e}")))?;
        if let Some(p) = grid.iter().find(|p| p.len() != case.point.len()) {
            return Err(usage(format!(
                "{id}: expected point ({}), got {} values",
                case.point.join(","),
                p.len()
            )));
        }
        let named_params = Coords::new(case.params.names(params.len()), params);

        let mut order: Vec<&Vec<f64>> = grid.iter().collect();
        order.sort_by(|x, y| cmp_points(x, y));

        let evaluated: Vec<Option<SweepRecord>> = order
            .par_iter()
            .map(|p| {
                let ev = case.evaluate(params, p).ok()?;
                Some(SweepRecord {
                    id: case.id.to_string(),
                    params: named_params.clone(),
                    point: Coords::new(case.point.iter().map(|n| n.to_string()).collect(), p),
                    lhs_log: ev.lhs_log,
                    rhs_log: ev.rhs_log,
                    margin: ev.margin,
                    holds: ev.margin >= -HOLDS_TOL,
                })
            })
            .collect();
        let skipped = evaluated.iter().filter(|r| r.is_none()).count();
        Ok(SweepOutcome {
            records: evaluated.into_iter().flatten().collect(),
            skipped,
        })
    }

    /// Checks that `ids` can be ranked against each other: same target, same
    /// side and the same coordinate layout.
    pub fn check_compatible(&self, ids: &[&str]) -> Result<Vec<&InequalityCase>> {
        let cases = self.expand(ids)?;
        let first = cases[0];
        for c in &cases[1..] {
            if c.target != first.target || c.side != first.side || c.params != first.params || c.point != first.point {
                return Err(usage(format!(
                    "{} and {} do not bound the same expression ({} {:?} vs {} {:?})",
                    first.id,
                    c.id,
                    first.target,
                    first.side,
                    c.target,
                    c.side
                )));
            }
        }
        Ok(cases)
    }

    /// Ranks bounds on a common target at one point. Lower bounds rank
    /// largest first, upper bounds smallest first.
    pub fn tightness_compare(&self, ids: &[&str], params: &[f64], point: &[f64]) -> Result<TightnessReport> {
        let cases = self.check_compatible(ids)?;
        let mut bounds = Vec::with_capacity(cases.len());
        let mut target_log = f64::NAN;
        for c in &cases {
            let ev = c.evaluate(params, point)?;
            target_log = ev.lhs_log;
            bounds.push(BoundValue {
                id: c.id.to_string(),
                bound_log: ev.rhs_log,
                bound: ev.rhs_log.exp(),
                margin: ev.margin,
            });
        }
        // tightest bound = smallest margin
        let mut ranked: Vec<&BoundValue> = bounds.iter().collect();
        ranked.sort_by(|x, y| x.margin.total_cmp(&y.margin));
        let ranking: Vec<String> = ranked.iter().map(|b| b.id.clone()).collect();
        Ok(TightnessReport {
            target: cases[0].target.to_string(),
            side: cases[0].side,
            target_log,
            target_value: target_log.exp(),
            tightest: ranking[0].clone(),
            ranking,
            bounds,
        })
    }
}

fn cmp_points(x: &[f64], y: &[f64]) -> std::cmp::Ordering {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.total_cmp(b))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Summaries of the built-in registry, in registration order.
pub fn registry_list() -> Vec<CaseSummary> {
    Registry::standard().list()
}

pub fn margin(id: &str, params: &[f64], point: &[f64]) -> Result<f64> {
    Registry::standard().margin(id, params, point)
}

pub fn sweep(id: &str, params: &[f64], grid: &[Vec<f64>]) -> Result<SweepOutcome> {
    Registry::standard().sweep(id, params, grid)
}

pub fn tightness_compare(ids: &[&str], params: &[f64], point: &[f64]) -> Result<TightnessReport> {
    Registry::standard().tightness_compare(ids, params, point)
}

/// `Σ c_i ln Γ(x_i)` for arguments already known to be positive.
pub(crate) fn lg(terms: &[(f64, f64)]) -> f64 {
    specfun::ln_gamma_combination(terms)
}
