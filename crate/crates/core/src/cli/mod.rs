//! The `cmgamma` command line: `audit`, `certify`, `bounds`, `compare` and
//! `list`.
//!
//! Every command renders its report into memory and then writes it either to
//! `--out` or to the supplied stdout handle, so output is byte-identical for
//! identical settings. Human-readable summaries go to stderr.

pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use parse::{
    parse_config, parse_family, parse_grid, parse_params, FamilyKind, FileConfig, GridSpec, ParamList, ParamValue,
    Spacing, MAX_GRID_COUNT,
};

use crate::certify::{self, CertConfig, CertReport, Verdict};
use crate::error::{usage, Error, Result};
use crate::inequalities::{Arity, Coords, InequalityCase, Registry, Side, SweepRecord, HOLDS_TOL};
use crate::kernels::RatioFamily;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "CMGAMMA_SEED";

/// Upper limit on the number of points one command may evaluate.
const MAX_POINTS: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "cmgamma", version, about = "Gamma-ratio inequality audits and complete-monotonicity certification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate inequality margins over a grid or a random sample.
    Audit(SweepArgs),
    /// Certify (log-)complete monotonicity of a ratio family on a z grid.
    Certify(CertifyArgs),
    /// Print a gamma expression next to its registered bounds at one point.
    Bounds(BoundsArgs),
    /// Rank bounds on a common expression over a grid.
    Compare(SweepArgs),
    /// List the registered inequalities.
    List(ListArgs),
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Named values, e.g. `a=1,b=2` or `a=5,5,b=0,9` for lists.
    #[arg(long)]
    pub params: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
    /// Margin slack below zero still counted as holding.
    #[arg(long)]
    pub tol: Option<f64>,
    /// JSON file with default settings; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Inequality ids or group names, comma-separated or repeated.
    #[arg(long, value_delimiter = ',')]
    pub id: Vec<String>,
    /// `min:max:count[:log]`; one grid is shared by all free coordinates,
    /// otherwise give one per coordinate.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Vec<String>,
    /// Draw this many random points instead of walking the grid.
    #[arg(long)]
    pub samples: Option<usize>,
    /// RNG seed; falls back to the config file, then CMGAMMA_SEED, then 42.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// two-param, multi-param, majorized or symmetric.
    #[arg(long)]
    pub family: Option<String>,
    /// `min:max:count[:log]` of z values; defaults to 30 log-spaced points
    /// above the domain bound.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Vec<String>,
    /// Highest derivative order checked.
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Finite-difference step.
    #[arg(long)]
    pub h: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// wallis, wallis-z, half, sym, inq3, beta, duplication or inq58.
    pub topic: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    /// csv or json.
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn parse_format(s: &str) -> Result<Format> {
    match s {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(usage(format!("unknown format {s:?}, expected csv or json"))),
    }
}

/// Flags merged over the config file.
#[derive(Debug, Clone, Default)]
struct Settings {
    ids: Vec<String>,
    family: Option<String>,
    topic: Option<String>,
    params: ParamList,
    grids: Vec<GridSpec>,
    samples: Option<usize>,
    seed: u64,
    out: Option<PathBuf>,
    format: Option<Format>,
    tol: Option<f64>,
    n_max: Option<u32>,
    h: Option<f64>,
}

struct Flags<'a> {
    common: &'a CommonArgs,
    ids: &'a [String],
    grid: &'a [String],
    family: Option<&'a String>,
    topic: Option<&'a String>,
    samples: Option<usize>,
    seed: Option<u64>,
    n_max: Option<u32>,
    h: Option<f64>,
}

fn resolve(flags: Flags<'_>) -> Result<Settings> {
    let file = match &flags.common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => FileConfig::default(),
    };
    let ids = if flags.ids.is_empty() { file.ids.clone().unwrap_or_default() } else { flags.ids.to_vec() };
    let params = match &flags.common.params {
        Some(p) => parse_params(p)?,
        None => file.param_list(),
    };
    let grid_text = if flags.grid.is_empty() { file.grid.clone().unwrap_or_default() } else { flags.grid.to_vec() };
    let grids = grid_text.iter().map(|g| parse_grid(g)).collect::<Result<Vec<_>>>()?;
    let env_seed = match std::env::var(SEED_ENV) {
        Ok(s) => Some(s.trim().parse::<u64>().map_err(|_| usage(format!("{SEED_ENV} must be an integer, got {s:?}")))?),
        Err(_) => None,
    };
    let format = flags.common.format.clone().or(file.format.clone()).map(|f| parse_format(&f)).transpose()?;
    let tol = flags.common.tol.or(file.tol);
    if let Some(t) = tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(usage(format!("tolerance must be finite and >= 0, got {t}")));
        }
    }
    Ok(Settings {
        ids: ids.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        family: flags.family.cloned().or(file.family),
        topic: flags.topic.cloned().or(file.topic),
        params,
        grids,
        samples: flags.samples.or(file.samples),
        seed: flags.seed.or(file.seed).or(env_seed).unwrap_or(DEFAULT_SEED),
        out: flags.common.out.clone().or(file.out),
        format,
        tol,
        n_max: flags.n_max.or(file.n_max),
        h: flags.h.or(file.h),
    })
}

/// Parses `args` (including the program name) and runs the command against
/// `registry`. Returns the process exit code.
pub fn run<I, T>(args: I, registry: &Registry, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli.command, registry, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: &Command, registry: &Registry, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Audit(a) | Command::Compare(a) => {
            let settings = resolve(Flags {
                common: &a.common,
                ids: &a.id,
                grid: &a.grid,
                family: None,
                topic: None,
                samples: a.samples,
                seed: a.seed,
                n_max: None,
                h: None,
            })?;
            if matches!(cmd, Command::Audit(_)) {
                cmd_audit(&settings, registry, stdout, stderr)
            } else {
                cmd_compare(&settings, registry, stdout, stderr)
            }
        }
        Command::Certify(c) => {
            let settings = resolve(Flags {
                common: &c.common,
                ids: &[],
                grid: &c.grid,
                family: c.family.as_ref(),
                topic: None,
                samples: None,
                seed: None,
                n_max: c.n_max,
                h: c.h,
            })?;
            cmd_certify(&settings, stdout, stderr)
        }
        Command::Bounds(b) => {
            let settings = resolve(Flags {
                common: &b.common,
                ids: &[],
                grid: &[],
                family: None,
                topic: b.topic.as_ref(),
                samples: None,
                seed: None,
                n_max: None,
                h: None,
            })?;
            cmd_bounds(&settings, registry, stdout, stderr)
        }
        Command::List(l) => {
            let format = l.format.as_deref().map(parse_format).transpose()?.unwrap_or(Format::Csv);
            cmd_list(format, registry, stdout)
        }
    }
}

fn emit(settings: &Settings, bytes: &[u8], stdout: &mut dyn Write) -> Result<()> {
    match &settings.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => stdout.write_all(bytes).map_err(|e| usage(format!("cannot write output: {e}"))),
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_bytes(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| usage(format!("csv output failed: {e}"));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    w.into_inner().map_err(|e| usage(format!("csv output failed: {e}")))
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| usage(format!("json output failed: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// How one case's coordinates are filled from `--params`.
struct Binding {
    params: Vec<f64>,
    /// Point coordinates fixed by `--params`; `None` marks a free coordinate.
    fixed: Vec<Option<f64>>,
}

impl Binding {
    fn free(&self) -> usize {
        self.fixed.iter().filter(|v| v.is_none()).count()
    }
}

fn bind(case: &InequalityCase, given: &ParamList) -> Result<Binding> {
    let lookup = |name: &str| given.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_slice());
    let scalar = |name: &str| -> Result<Option<f64>> {
        match lookup(name) {
            None => Ok(None),
            Some([v]) => Ok(Some(*v)),
            Some(_) => Err(usage(format!("{}: parameter {name} takes a single value", case.id))),
        }
    };
    let missing = |name: &str| usage(format!("{}: missing parameter {name}", case.id));
    let (params, used): (Vec<f64>, Vec<&str>) = match case.params {
        Arity::Fixed(names) => {
            let mut vals = Vec::new();
            for n in names {
                vals.push(scalar(n)?.ok_or_else(|| missing(n))?);
            }
            (vals, names.to_vec())
        }
        Arity::List(name) => (lookup(name).ok_or_else(|| missing(name))?.to_vec(), vec![name]),
        Arity::PairedLists(a, b) => {
            let (va, vb) = (lookup(a).ok_or_else(|| missing(a))?, lookup(b).ok_or_else(|| missing(b))?);
            if va.len() != vb.len() {
                return Err(usage(format!("{}: lists {a} and {b} must have equal length", case.id)));
            }
            ([va, vb].concat(), vec![a, b])
        }
    };
    let mut fixed = Vec::with_capacity(case.point.len());
    for n in case.point {
        fixed.push(scalar(n)?);
    }
    if let Some((k, _)) = given.iter().find(|(k, _)| !used.contains(&k.as_str()) && !case.point.contains(&k.as_str())) {
        return Err(usage(format!(
            "{}: parameter {k} is not used (parameters: {}; point: {})",
            case.id,
            case.params.describe(),
            case.point.join(",")
        )));
    }
    Ok(Binding { params, fixed })
}

/// Points for a binding: the grid product over free coordinates, or random
/// draws inside the grid ranges when `samples` is set.
fn grid_points(b: &Binding, settings: &Settings, rng: &mut ChaCha8Rng, id: &str) -> Result<Vec<Vec<f64>>> {
    let free = b.free();
    if free == 0 {
        if !settings.grids.is_empty() {
            return Err(usage(format!("{id}: every point coordinate is fixed by --params; drop --grid")));
        }
        return Ok(vec![b.fixed.iter().map(|v| v.expect("all fixed")).collect()]);
    }
    let axes: Vec<GridSpec> = match settings.grids.len() {
        0 => return Err(usage(format!("{id}: {free} free coordinate(s) need --grid"))),
        1 => vec![settings.grids[0]; free],
        n if n == free => settings.grids.clone(),
        n => return Err(usage(format!("{id}: got {n} grids for {free} free coordinates"))),
    };
    let fill = |free_vals: &[f64]| -> Vec<f64> {
        let mut it = free_vals.iter();
        b.fixed.iter().map(|v| v.unwrap_or_else(|| *it.next().expect("one value per free axis"))).collect()
    };
    if let Some(n) = settings.samples {
        if n == 0 || n > MAX_POINTS {
            return Err(usage(format!("--samples must be in 1..={MAX_POINTS}")));
        }
        return Ok((0..n)
            .map(|_| {
                let vals: Vec<f64> = axes.iter().map(|g| draw(g, rng)).collect();
                fill(&vals)
            })
            .collect());
    }
    let total = axes.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.count)).filter(|&t| t <= MAX_POINTS);
    if total.is_none() {
        return Err(usage(format!("{id}: grid product exceeds {MAX_POINTS} points")));
    }
    let axis_points: Vec<Vec<f64>> = axes.iter().map(GridSpec::points).collect();
    let mut out = vec![Vec::new()];
    for pts in &axis_points {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pts.iter().map(move |&p| {
                    let mut v = prefix.clone();
                    v.push(p);
                    v
                })
            })
            .collect();
    }
    Ok(out.iter().map(|v| fill(v)).collect())
}

fn draw(g: &GridSpec, rng: &mut ChaCha8Rng) -> f64 {
    if g.min == g.max {
        return g.min;
    }
    match g.spacing {
        Spacing::Linear => rng.gen_range(g.min..=g.max),
        Spacing::Log => rng.gen_range(g.min.ln()..=g.max.ln()).exp(),
    }
}

#[derive(Serialize)]
struct AuditSummary {
    points: usize,
    skipped: usize,
    violations: usize,
    min_margin: Option<f64>,
    worst: Option<WorstRecord>,
    tol: f64,
    seed: u64,
}

#[derive(Serialize)]
struct WorstRecord {
    id: String,
    params: Coords,
    point: Coords,
}

#[derive(Serialize)]
struct AuditReport<'a> {
    records: &'a [SweepRecord],
    summary: AuditSummary,
}

fn cmd_audit(settings: &Settings, registry: &Registry, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    if settings.ids.is_empty() {
        return Err(usage("audit needs --id"));
    }
    let ids: Vec<&str> = settings.ids.iter().map(String::as_str).collect();
    let cases = registry.expand(&ids)?;
    let tol = settings.tol.unwrap_or(HOLDS_TOL);
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut records = Vec::new();
    let mut skipped = 0;
    for case in cases {
        let use_sampler = settings.grids.is_empty() && settings.samples.is_some();
        let (outcome, first_point) = if use_sampler {
            if !settings.params.is_empty() {
                return Err(usage("--samples without --grid draws parameters too; drop --params"));
            }
            let n = settings.samples.unwrap_or(0);
            if n == 0 || n > MAX_POINTS {
                return Err(usage(format!("--samples must be in 1..={MAX_POINTS}")));
            }
            let mut out = crate::inequalities::SweepOutcome { records: Vec::new(), skipped: 0 };
            for _ in 0..n {
                let (p, x) = (case.sample)(&mut rng);
                out.records.extend(registry.sweep(case.id, &p, &[x])?.records);
            }
            (out, None)
        } else {
            let b = bind(case, &settings.params)?;
            let points = grid_points(&b, settings, &mut rng, case.id)?;
            let first = points.first().cloned().map(|p| (b.params.clone(), p));
            (registry.sweep(case.id, &b.params, &points)?, first)
        };
        if outcome.records.is_empty() {
            let reason = match first_point {
                Some((p, x)) => case.check_domain(&p, &x).err().map(|e| match e {
                    Error::Domain(m) | Error::Usage(m) => m,
                    other => other.to_string(),
                }),
                None => None,
            };
            return Err(usage(format!(
                "no grid point lies inside the domain of {} ({})",
                case.id,
                reason.unwrap_or_else(|| case.domain_text.to_string())
            )));
        }
        skipped += outcome.skipped;
        records.extend(outcome.records);
    }
    for r in &mut records {
        r.holds = r.margin >= -tol;
    }
    let violations = records.iter().filter(|r| !r.holds).count();
    let worst = records.iter().min_by(|x, y| x.margin.total_cmp(&y.margin));
    let summary = AuditSummary {
        points: records.len(),
        skipped,
        violations,
        min_margin: worst.map(|r| r.margin),
        worst: worst.map(|r| WorstRecord { id: r.id.clone(), params: r.params.clone(), point: r.point.clone() }),
        tol,
        seed: settings.seed,
    };
    let bytes = match settings.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header = ["id", "params", "point", "lhs_log", "rhs_log", "margin", "holds"].map(String::from);
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    vec![
                        r.id.clone(),
                        r.params.to_string(),
                        r.point.to_string(),
                        num(r.lhs_log),
                        num(r.rhs_log),
                        num(r.margin),
                        r.holds.to_string(),
                    ]
                })
                .collect();
            csv_bytes(&header, &rows)?
        }
        Format::Json => json_bytes(&AuditReport { records: &records, summary })?,
    };
    emit(settings, &bytes, stdout)?;
    let _ = match worst {
        Some(w) => writeln!(
            stderr,
            "audit: {} points, {} skipped, {} violations, min margin {:e} ({} at {}{}{})",
            records.len(),
            skipped,
            violations,
            w.margin,
            w.id,
            w.params,
            if w.params.0.is_empty() { "" } else { ";" },
            w.point
        ),
        None => writeln!(stderr, "audit: no points evaluated"),
    };
    Ok(if violations > 0 { EXIT_VIOLATED } else { EXIT_OK })
}

fn default_cert_grid(fam: &RatioFamily) -> Vec<f64> {
    let lb = fam.domain_lower_bound();
    (0..30).map(|i| lb + 0.05 * 200f64.powf(f64::from(i) / 29.0)).collect()
}

#[derive(Serialize)]
struct CertifyOutput<'a> {
    family: &'a RatioFamily,
    verdict: Verdict,
    log_cm: &'a CertReport,
    finite_difference: &'a CertReport,
}

fn combine(a: Verdict, b: Verdict) -> Verdict {
    use Verdict::*;
    match (a, b) {
        (Violated, _) | (_, Violated) => Violated,
        (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
        _ => Certified,
    }
}

fn cmd_certify(settings: &Settings, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let family = settings.family.as_deref().ok_or_else(|| usage("certify needs --family"))?;
    let fam = parse_family(family)?.build(&settings.params)?;
    let grid = match settings.grids.as_slice() {
        [] => default_cert_grid(&fam),
        [g] => g.points(),
        _ => return Err(usage("certify takes a single --grid")),
    };
    let mut cfg = CertConfig::new(grid);
    if let Some(n) = settings.n_max {
        cfg.n_max = n;
    }
    if let Some(t) = settings.tol {
        cfg.tol = t;
    }
    if let Some(h) = settings.h {
        cfg.fd_step = h;
    }
    let log_cm = certify::certify_log_cm(&fam, &cfg)?;
    let fd = certify::certify_cm_finite_diff(&fam, &cfg)?;
    let verdict = combine(log_cm.verdict, fd.verdict);
    let bytes = match settings.format.unwrap_or(Format::Json) {
        Format::Json => json_bytes(&CertifyOutput { family: &fam, verdict, log_cm: &log_cm, finite_difference: &fd })?,
        Format::Csv => {
            let header = ["method", "z", "n", "margin", "threshold", "agree"].map(String::from);
            let rows: Vec<Vec<String>> = [("log_derivative", &log_cm), ("finite_difference", &fd)]
                .iter()
                .flat_map(|(name, rep)| {
                    rep.entries.iter().map(move |e| {
                        vec![name.to_string(), num(e.z), e.n.to_string(), num(e.margin), num(e.threshold), e.agree.to_string()]
                    })
                })
                .collect();
            csv_bytes(&header, &rows)?
        }
    };
    emit(settings, &bytes, stdout)?;
    let describe = |r: &CertReport| match r.worst {
        Some(w) => format!("{:?} (worst z={} n={} value={:e})", r.verdict, w.z, w.n, w.value),
        None => format!("{:?}", r.verdict),
    };
    let _ = writeln!(
        stderr,
        "certify {}: log-derivative {}, finite-difference {}, verdict {:?}",
        fam.name(),
        describe(&log_cm),
        describe(&fd),
        verdict
    );
    Ok(exit_for(verdict))
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Certified => EXIT_OK,
        Verdict::Violated => EXIT_VIOLATED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Topics for `bounds`: the ids shown together for one expression.
pub const BOUND_TOPICS: &[(&str, &[&str])] = &[
    ("wallis", &["WALLIS_LB", "WALLIS_UB"]),
    ("wallis-z", &["WALLIS_Z_LB", "WALLIS_Z_UB"]),
    ("half", &["HALF_SANDWICH_LB", "HALF_SANDWICH_UB"]),
    ("sym", &["SYM_GE1", "SYM_SANDWICH_LB", "SYM_SANDWICH_UB"]),
    ("inq3", &["INQ3_LB", "INQ3_UB"]),
    ("beta", &["BETA_UB", "BETA_UB_DRAGOMIR"]),
    ("duplication", &["DUP_SANDWICH_LB", "DUP_SANDWICH_UB"]),
    ("inq58", &["INQ58", "INQ58_GE1", "INQ580", "INQ581"]),
];

#[derive(Serialize)]
struct BoundRow {
    id: String,
    side: Side,
    target: String,
    target_value: f64,
    bound: String,
    bound_value: f64,
    margin: f64,
    holds: bool,
    baseline: bool,
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    topic: &'a str,
    params: Coords,
    rows: &'a [BoundRow],
}

fn cmd_bounds(settings: &Settings, registry: &Registry, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let topic = settings.topic.as_deref().ok_or_else(|| {
        let names: Vec<&str> = BOUND_TOPICS.iter().map(|(t, _)| *t).collect();
        usage(format!("bounds needs a topic: {}", names.join(", ")))
    })?;
    let (_, ids) = BOUND_TOPICS
        .iter()
        .find(|(t, _)| *t == topic)
        .ok_or_else(|| usage(format!("unknown bounds topic {topic:?}")))?;
    let tol = settings.tol.unwrap_or(HOLDS_TOL);
    let mut rows = Vec::new();
    for id in *ids {
        let case = registry.get(id)?;
        let b = bind(case, &settings.params)?;
        if b.free() > 0 {
            return Err(usage(format!("{id}: give a value for every coordinate ({})", case.point.join(","))));
        }
        let point: Vec<f64> = b.fixed.iter().map(|v| v.expect("no free coordinates")).collect();
        match case.evaluate(&b.params, &point) {
            Ok(ev) => rows.push(BoundRow {
                id: case.id.to_string(),
                side: case.side,
                target: case.target.to_string(),
                target_value: ev.lhs_log.exp(),
                bound: case.bound.to_string(),
                bound_value: ev.rhs_log.exp(),
                margin: ev.margin,
                holds: ev.margin >= -tol,
                baseline: case.baseline,
            }),
            Err(Error::Domain(msg)) if case.baseline => {
                let _ = writeln!(stderr, "bounds: skipping reference bound {msg}");
            }
            Err(e) => return Err(e),
        }
    }
    let bytes = match settings.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let header = ["id", "side", "target", "target_value", "bound", "bound_value", "margin", "holds"]
                .map(String::from);
            let out: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.id.clone(),
                        format!("{:?}", r.side).to_lowercase(),
                        r.target.clone(),
                        num(r.target_value),
                        r.bound.clone(),
                        num(r.bound_value),
                        num(r.margin),
                        r.holds.to_string(),
                    ]
                })
                .collect();
            csv_bytes(&header, &out)?
        }
        Format::Json => {
            let params = Coords(settings.params.iter().flat_map(|(k, v)| v.iter().map(move |x| (k.clone(), *x))).collect());
            json_bytes(&BoundsReport { topic, params, rows: &rows })?
        }
    };
    emit(settings, &bytes, stdout)?;
    let failed = rows.iter().any(|r| !r.holds && !r.baseline);
    Ok(if failed { EXIT_VIOLATED } else { EXIT_OK })
}

#[derive(Serialize)]
struct CompareRow {
    point: Coords,
    target: f64,
    bounds: Coords,
    tightest: String,
}

#[derive(Serialize)]
struct CompareReport<'a> {
    target: &'a str,
    side: Side,
    ids: Vec<&'a str>,
    rows: &'a [CompareRow],
    skipped: usize,
}

fn cmd_compare(settings: &Settings, registry: &Registry, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    if settings.ids.is_empty() {
        return Err(usage("compare needs --id"));
    }
    let ids: Vec<&str> = settings.ids.iter().map(String::as_str).collect();
    let cases = registry.check_compatible(&ids)?;
    let case_ids: Vec<&str> = cases.iter().map(|c| c.id).collect();
    let first = cases[0];
    let b = bind(first, &settings.params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let points = grid_points(&b, settings, &mut rng, first.id)?;
    let point_names: Vec<String> = first.point.iter().map(|s| s.to_string()).collect();

    let mut rows = Vec::new();
    let mut skipped = 0;
    let mut last_err = None;
    for p in &points {
        match registry.tightness_compare(&case_ids, &b.params, p) {
            Ok(t) => rows.push(CompareRow {
                point: Coords::new(point_names.clone(), p),
                target: t.target_value,
                bounds: Coords(t.bounds.iter().map(|x| (x.id.clone(), x.bound)).collect()),
                tightest: t.tightest,
            }),
            Err(Error::Domain(msg)) => {
                skipped += 1;
                last_err = Some(msg);
            }
            Err(e) => return Err(e),
        }
    }
    if rows.is_empty() {
        return Err(usage(format!(
            "no grid point lies inside every domain ({})",
            last_err.unwrap_or_default()
        )));
    }
    let bytes = match settings.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut header = vec!["point".to_string(), "target".to_string()];
            header.extend(case_ids.iter().map(|s| s.to_string()));
            header.push("tightest".to_string());
            let out: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.point.to_string(), num(r.target)];
                    row.extend(r.bounds.0.iter().map(|(_, v)| num(*v)));
                    row.push(r.tightest.clone());
                    row
                })
                .collect();
            csv_bytes(&header, &out)?
        }
        Format::Json => json_bytes(&CompareReport {
            target: first.target,
            side: first.side,
            ids: case_ids.clone(),
            rows: &rows,
            skipped,
        })?,
    };
    emit(settings, &bytes, stdout)?;
    let _ = writeln!(stderr, "compare: {} points, {} skipped", rows.len(), skipped);
    Ok(EXIT_OK)
}

fn cmd_list(format: Format, registry: &Registry, stdout: &mut dyn Write) -> Result<i32> {
    let list = registry.list();
    let bytes = match format {
        Format::Json => json_bytes(&list)?,
        Format::Csv => {
            let header = ["id", "params", "point", "side", "statement", "domain", "baseline"].map(String::from);
            let rows: Vec<Vec<String>> = list
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.params.clone(),
                        c.point.clone(),
                        format!("{:?}", c.side).to_lowercase(),
                        c.statement.clone(),
                        c.domain.to_string(),
                        c.baseline.to_string(),
                    ]
                })
                .collect();
            csv_bytes(&header, &rows)?
        }
    };
    stdout.write_all(&bytes).map_err(|e| usage(format!("cannot write output: {e}")))?;
    Ok(EXIT_OK)
}
