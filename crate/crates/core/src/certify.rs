//! Numerical certification of complete monotonicity.
//!
//! A family is certified on a grid when `(-1)^n (ln f)^(n)(z) ≥ -tol` for
//! every grid point and every `1 ≤ n ≤ n_max`, with the quadrature and
//! polygamma routes agreeing. Logarithmic complete monotonicity implies
//! complete monotonicity, so this certifies `f` itself. A forward-difference
//! test on `f` provides an independent necessary condition.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, usage, Error, Result};
use crate::kernels::{self, EvalPath, RatioFamily, DEFAULT_MAX_ORDER};
use crate::quad::QuadOptions;

#[derive(Debug, Clone, PartialEq)]
pub struct CertConfig {
    pub z_grid: Vec<f64>,
    pub n_max: u32,
    pub tol: f64,
    pub fd_step: f64,
    pub t_points: usize,
    /// Upper limit accepted for `n_max`.
    pub max_order: u32,
    /// Relative agreement required between the two log-derivative routes.
    pub agree_rel: f64,
    /// Absolute agreement floor between the two routes.
    pub agree_abs: f64,
    pub quad: QuadOptions,
}

impl CertConfig {
    pub fn new(z_grid: Vec<f64>) -> Self {
        Self {
            z_grid,
            n_max: 8,
            tol: 1e-9,
            fd_step: 1e-2,
            t_points: 200,
            max_order: DEFAULT_MAX_ORDER,
            agree_rel: 1e-8,
            agree_abs: 1e-9,
            quad: QuadOptions::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.z_grid.is_empty() {
            return Err(usage("certification grid is empty"));
        }
        if self.z_grid.iter().any(|z| !z.is_finite()) {
            return Err(usage("certification grid contains a non-finite point"));
        }
        if self.z_grid.windows(2).any(|w| w[0] > w[1]) {
            return Err(usage("certification grid must be sorted ascending"));
        }
        if self.n_max == 0 || self.n_max > self.max_order {
            return Err(usage(format!(
                "n_max must be in 1..={}, got {}",
                self.max_order, self.n_max
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 || !self.fd_step.is_finite() || self.fd_step <= 0.0 {
            return Err(usage("tolerance and finite-difference step must be positive"));
        }
        if self.t_points < 2 {
            return Err(usage("kernel scan needs at least two points"));
        }
        self.quad.validate()
    }

    fn check_grid(&self, fam: &RatioFamily) -> Result<()> {
        let bound = fam.domain_lower_bound();
        match self.z_grid.iter().find(|&&z| z <= bound) {
            Some(z) => Err(usage(format!(
                "grid point z = {z} is not above the {} domain bound {bound}",
                fam.name()
            ))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Violated,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertMethod {
    LogDerivative,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathValue {
    pub path: PathKind,
    pub value: f64,
    pub err_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathKind {
    Quadrature,
    Polygamma,
    FiniteDifference,
}

impl From<EvalPath> for PathKind {
    fn from(p: EvalPath) -> Self {
        match p {
            EvalPath::Quadrature => PathKind::Quadrature,
            EvalPath::Polygamma => PathKind::Polygamma,
        }
    }
}

/// One `(z, n)` cell of a certification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginEntry {
    pub z: f64,
    pub n: u32,
    /// Smallest value over the evaluated paths. For finite differences the
    /// margin is `(-1)^n Δ_h^n f(z) / f(z)`.
    pub margin: f64,
    /// The entry passes when `margin >= threshold`.
    pub threshold: f64,
    pub paths: Vec<PathValue>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl MarginEntry {
    fn violated(&self) -> bool {
        self.agree && self.margin < self.threshold
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelScan {
    /// Minimum of `K(t) e^{-ct}` over the scan grid.
    pub min_value: f64,
    pub argmin_t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorstPoint {
    pub z: f64,
    pub n: u32,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertReport {
    pub family: RatioFamily,
    pub method: CertMethod,
    pub tol: f64,
    pub n_max: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
    pub verdict: Verdict,
    pub worst: Option<WorstPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_scan: Option<KernelScan>,
    pub entries: Vec<MarginEntry>,
}

/// First `k` where the decreasing-order partial sums break `b ≺_w a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartialSumGap {
    /// 1-based number of leading terms summed.
    pub k: usize,
    pub sum_a: f64,
    pub sum_b: f64,
}

fn check_lists(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(usage(format!(
            "majorization lists differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(usage("majorization entries must be finite and >= 0"));
    }
    Ok(())
}

fn partial_sums(values: &[f64], descending: bool) -> Vec<f64> {
    let mut sorted = values.to_vec();
    if descending {
        sorted.sort_by(|x, y| y.total_cmp(x));
    } else {
        sorted.sort_by(|x, y| x.total_cmp(y));
    }
    sorted
        .iter()
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

fn dominated(sum_b: f64, sum_a: f64, k: usize) -> bool {
    // slack of a few ulps per summed term
    sum_b <= sum_a + 4.0 * f64::EPSILON * k as f64 * sum_a.abs().max(sum_b.abs())
}

/// Weak submajorization `b ≺_w a`: every decreasing-order partial sum of `b`
/// is at most the matching partial sum of `a`. This is the condition under
/// which `Σ e^{a_i t} ≥ Σ e^{b_i t}` for all `t ≥ 0`.
pub fn check_weak_submajorization(a: &[f64], b: &[f64]) -> Result<bool> {
    Ok(weak_submajorization_gap(a, b)?.is_none())
}

/// The first failing partial sum of [`check_weak_submajorization`], if any.
pub fn weak_submajorization_gap(a: &[f64], b: &[f64]) -> Result<Option<PartialSumGap>> {
    check_lists(a, b)?;
    let sa = partial_sums(a, true);
    let sb = partial_sums(b, true);
    Ok(sa
        .iter()
        .zip(&sb)
        .enumerate()
        .find(|(k, (x, y))| !dominated(**y, **x, k + 1))
        .map(|(k, (x, y))| PartialSumGap {
            k: k + 1,
            sum_a: *x,
            sum_b: *y,
        }))
}

/// Increasing-order partial-sum comparison. Not sufficient for the kernel
/// inequality (see `a = (5, 5)`, `b = (0, 9)`); kept for diagnostics.
pub fn ascending_partial_sums_hold(a: &[f64], b: &[f64]) -> Result<bool> {
    check_lists(a, b)?;
    let sa = partial_sums(a, false);
    let sb = partial_sums(b, false);
    Ok(sa.iter().zip(&sb).enumerate().all(|(k, (x, y))| dominated(*y, *x, k + 1)))
}

fn check_majorized_precondition(fam: &RatioFamily) -> Result<()> {
    if let RatioFamily::Majorized { a, b } = fam {
        if let Some(gap) = weak_submajorization_gap(a, b)? {
            return Err(usage(format!(
                "majorization precondition fails: top-{} partial sums {} (a) < {} (b)",
                gap.k, gap.sum_a, gap.sum_b
            )));
        }
    }
    Ok(())
}

/// Minimum of the scaled kernel `K(t) e^{-ct}` over `t_points` log-spaced
/// points in `[1e-6, 50]`. Does not require the majorization precondition.
pub fn kernel_nonneg_scan(fam: &RatioFamily, t_points: usize) -> Result<KernelScan> {
    fam.validate()?;
    if t_points < 2 {
        return Err(usage("kernel scan needs at least two points"));
    }
    let (lo, hi) = (1e-6f64.ln(), 50f64.ln());
    let mut best = KernelScan {
        min_value: f64::INFINITY,
        argmin_t: f64::NAN,
    };
    for i in 0..t_points {
        let t = (lo + (hi - lo) * i as f64 / (t_points - 1) as f64).exp();
        let v = fam.kernel_scaled(t);
        if v < best.min_value {
            best = KernelScan { min_value: v, argmin_t: t };
        }
    }
    Ok(best)
}

fn assemble(
    fam: &RatioFamily,
    cfg: &CertConfig,
    method: CertMethod,
    entries: Vec<MarginEntry>,
    kernel_scan: Option<KernelScan>,
) -> CertReport {
    let violated = entries.iter().any(MarginEntry::violated);
    let disagree = entries.iter().any(|e| !e.agree);
    let verdict = if violated {
        Verdict::Violated
    } else if disagree {
        Verdict::Inconclusive
    } else {
        Verdict::Certified
    };
    let worst = entries
        .iter()
        .filter(|e| e.margin.is_finite())
        .min_by(|x, y| (x.margin - x.threshold).total_cmp(&(y.margin - y.threshold)))
        .map(|e| WorstPoint {
            z: e.z,
            n: e.n,
            value: e.margin,
        });
    CertReport {
        family: fam.clone(),
        method,
        tol: cfg.tol,
        n_max: cfg.n_max,
        fd_step: (method == CertMethod::FiniteDifference).then_some(cfg.fd_step),
        verdict,
        worst,
        kernel_scan,
        entries,
    }
}

fn grid_cells(cfg: &CertConfig) -> Vec<(f64, u32)> {
    cfg.z_grid
        .iter()
        .flat_map(|&z| (1..=cfg.n_max).map(move |n| (z, n)))
        .collect()
}

/// Certifies logarithmic complete monotonicity on `cfg.z_grid` by both
/// log-derivative routes.
pub fn certify_log_cm(fam: &RatioFamily, cfg: &CertConfig) -> Result<CertReport> {
    fam.validate()?;
    cfg.validate()?;
    check_majorized_precondition(fam)?;
    cfg.check_grid(fam)?;

    let entries: Vec<MarginEntry> = grid_cells(cfg)
        .into_par_iter()
        .map(|(z, n)| log_cm_cell(fam, cfg, z, n))
        .collect::<Result<_>>()?;
    let scan = kernel_nonneg_scan(fam, cfg.t_points)?;
    Ok(assemble(fam, cfg, CertMethod::LogDerivative, entries, Some(scan)))
}

fn log_cm_cell(fam: &RatioFamily, cfg: &CertConfig, z: f64, n: u32) -> Result<MarginEntry> {
    let poly = kernels::log_deriv_polygamma(fam, z, n)?;
    let mut paths = vec![PathValue {
        path: PathKind::Polygamma,
        value: poly.signed_value,
        err_estimate: poly.err_estimate,
    }];
    let (agree, note) = match kernels::log_deriv_quadrature(fam, z, n, &cfg.quad) {
        Ok(q) => {
            paths.insert(
                0,
                PathValue {
                    path: q.path.into(),
                    value: q.signed_value,
                    err_estimate: q.err_estimate,
                },
            );
            let gap = (q.signed_value - poly.signed_value).abs();
            let allowed = (100.0 * (q.err_estimate + poly.err_estimate))
                .max(cfg.agree_rel * poly.signed_value.abs())
                .max(cfg.agree_abs);
            if gap <= allowed {
                (true, None)
            } else {
                (false, Some(format!("paths differ by {gap:e}, allowed {allowed:e}")))
            }
        }
        Err(Error::Convergence { value, err_estimate }) => (
            false,
            Some(format!(
                "quadrature did not converge (best {value:e}, estimate {err_estimate:e})"
            )),
        ),
        Err(e) => return Err(e),
    };
    let margin = paths.iter().map(|p| p.value).fold(f64::INFINITY, f64::min);
    Ok(MarginEntry {
        z,
        n,
        margin,
        threshold: -cfg.tol,
        paths,
        agree,
        note,
    })
}

/// Checks `(-1)^n Δ_h^n f(z) ≥ -tol · max|f|` on forward stencils. This is
/// a necessary condition for complete monotonicity at any step `h > 0`.
pub fn certify_cm_finite_diff(fam: &RatioFamily, cfg: &CertConfig) -> Result<CertReport> {
    fam.validate()?;
    cfg.validate()?;
    cfg.check_grid(fam)?;
    let h = cfg.fd_step;
    let n_max = cfg.n_max as usize;

    let per_z: Vec<Vec<MarginEntry>> = cfg
        .z_grid
        .par_iter()
        .map(|&z| {
            let base = kernels::log_f(fam, z)?;
            let ratios = (0..=n_max)
                .map(|k| {
                    let zk = z + k as f64 * h;
                    kernels::log_f(fam, zk)
                        .map(|lf| (lf - base).exp())
                        .map_err(|_| usage(format!("finite-difference stencil point {zk} leaves the domain")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if ratios.iter().any(|r| !r.is_finite()) {
                return Err(domain(format!("f overflows on the stencil starting at z = {z}")));
            }
            Ok((1..=n_max)
                .map(|n| {
                    let mut binom = 1.0;
                    let mut diff = 0.0;
                    let mut roundoff = 0.0;
                    for (k, &g) in ratios.iter().enumerate().take(n + 1) {
                        let term = if k % 2 == 0 { binom * g } else { -binom * g };
                        diff += term;
                        roundoff += term.abs();
                        binom = binom * (n - k) as f64 / (k + 1) as f64;
                    }
                    let scale = ratios[..=n].iter().copied().fold(0.0, f64::max);
                    MarginEntry {
                        z,
                        n: n as u32,
                        margin: diff,
                        threshold: -cfg.tol * scale,
                        paths: vec![PathValue {
                            path: PathKind::FiniteDifference,
                            value: diff,
                            err_estimate: 4.0 * f64::EPSILON * roundoff,
                        }],
                        agree: true,
                        note: None,
                    }
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let entries = per_z.into_iter().flatten().collect();
    Ok(assemble(fam, cfg, CertMethod::FiniteDifference, entries, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(lo: f64, hi: f64, count: usize) -> Vec<f64> {
        (0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect()
    }

    #[test]
    fn weak_submajorization_examples() {
        assert!(check_weak_submajorization(&[0.0, 10.0], &[0.0, 1.0]).unwrap());
        assert!(!check_weak_submajorization(&[5.0, 5.0], &[0.0, 9.0]).unwrap());
        let gap = weak_submajorization_gap(&[5.0, 5.0], &[0.0, 9.0]).unwrap().unwrap();
        assert_eq!((gap.k, gap.sum_a, gap.sum_b), (1, 5.0, 9.0));
        assert!(ascending_partial_sums_hold(&[5.0, 5.0], &[0.0, 9.0]).unwrap());
        assert!(matches!(check_weak_submajorization(&[1.0], &[1.0, 2.0]), Err(Error::Usage(_))));
    }

    #[test]
    fn mean_vector_is_submajorized() {
        let a = [0.3, 1.1, 7.9, 2.2, 4.0];
        let mean = a.iter().sum::<f64>() / a.len() as f64;
        assert!(check_weak_submajorization(&a, &[mean; 5]).unwrap());
    }

    #[test]
    fn two_param_certified() {
        let fam = RatioFamily::TwoParam { a: 0.5, b: 0.7 };
        let cfg = CertConfig::new(linear(0.25, 10.2, 12));
        let report = certify_log_cm(&fam, &cfg).unwrap();
        assert_eq!(report.verdict, Verdict::Certified, "{:?}", report.worst);
        assert_eq!(report.entries.len(), 12 * 8);
        // deterministic ordering: z then n
        assert!(report.entries.windows(2).all(|w| (w[0].z, w[0].n) < (w[1].z, w[1].n)));
    }

    #[test]
    fn constant_family_has_zero_margins() {
        let fam = RatioFamily::TwoParam { a: 0.0, b: 0.0 };
        let report = certify_log_cm(&fam, &CertConfig::new(linear(0.5, 5.0, 5))).unwrap();
        assert_eq!(report.verdict, Verdict::Certified);
        assert!(report.entries.iter().all(|e| e.margin.abs() <= 1e-12));
    }

    #[test]
    fn failing_majorization_is_a_usage_error() {
        let fam = RatioFamily::Majorized { a: vec![5.0, 5.0], b: vec![0.0, 9.0] };
        match certify_log_cm(&fam, &CertConfig::new(vec![10.0, 11.0])) {
            Err(Error::Usage(msg)) => assert!(msg.contains("top-1") && msg.contains('5') && msg.contains('9'), "{msg}"),
            other => panic!("{other:?}"),
        }
        let scan = kernel_nonneg_scan(&fam, 200).unwrap();
        assert!(scan.min_value < 0.0);
    }

    #[test]
    fn grid_below_bound_is_rejected() {
        let fam = RatioFamily::Symmetric { a: 1.0 };
        assert!(matches!(certify_log_cm(&fam, &CertConfig::new(vec![1.0, 2.0])), Err(Error::Usage(_))));
        assert!(matches!(certify_cm_finite_diff(&fam, &CertConfig::new(vec![0.5])), Err(Error::Usage(_))));
    }

    #[test]
    fn config_validation() {
        let mut cfg = CertConfig::new(vec![]);
        assert!(cfg.validate().is_err());
        cfg.z_grid = vec![2.0, 1.0];
        assert!(cfg.validate().is_err());
        cfg.z_grid = vec![1.0, 2.0];
        cfg.n_max = 0;
        assert!(cfg.validate().is_err());
        cfg.n_max = 13;
        assert!(cfg.validate().is_err());
        cfg.n_max = 3;
        cfg.fd_step = 0.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn finite_difference_single_step() {
        let fam = RatioFamily::TwoParam { a: 1.0, b: 1.0 };
        let mut cfg = CertConfig::new(vec![2.0]);
        cfg.n_max = 1;
        cfg.fd_step = 0.5;
        let report = certify_cm_finite_diff(&fam, &cfg).unwrap();
        // f(2) - f(2.5) = 2 - Γ(3.5)Γ(1.5)/Γ(2.5)^2 = 2 - 5/3, normalised by f(2) = 2
        let e = &report.entries[0];
        assert!((e.margin * 2.0 - 1.0 / 3.0).abs() <= 1e-14, "{e:?}");
        assert_eq!(report.verdict, Verdict::Certified);
    }

    #[test]
    fn finite_difference_examples() {
        let sym = RatioFamily::Symmetric { a: 0.5 };
        let mut cfg = CertConfig::new(linear(1.0, 6.0, 11));
        cfg.n_max = 6;
        assert_eq!(certify_cm_finite_diff(&sym, &cfg).unwrap().verdict, Verdict::Certified);
        let multi = RatioFamily::MultiParam { a: vec![1.0, 2.0] };
        cfg.z_grid = linear(3.0, 9.0, 11);
        assert_eq!(certify_cm_finite_diff(&multi, &cfg).unwrap().verdict, Verdict::Certified);
    }

    #[test]
    fn kernel_scan_examples() {
        let scan = kernel_nonneg_scan(&RatioFamily::MultiParam { a: vec![1.0, 1.0] }, 200).unwrap();
        assert!(scan.min_value >= 0.0 && scan.min_value <= 1e-11);
        assert_eq!(scan.argmin_t, 1e-6f64.ln().exp());
        let scan = kernel_nonneg_scan(&RatioFamily::Symmetric { a: 2.0 }, 200).unwrap();
        assert!(scan.min_value >= 0.0 && scan.min_value <= 1e-11);
    }
}
