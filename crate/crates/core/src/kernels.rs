//! The four gamma-ratio families and two independent evaluations of
//! `(-1)^n (ln f)^(n)(z)`.
//!
//! Each family is `ln f(z) = Σ c_i ln Γ(z + s_i)`. Differentiating gives the
//! polygamma route; substituting the integral form of `ψ` gives the Laplace
//! route
//!
//! ```text
//! (-1)^n (ln f)^(n)(z) = ∫_0^∞ t^{n-1} w(t, z) K(t) / (1 - e^{-t}) dt
//! ```
//!
//! with a nonnegative kernel `K`. Both are implemented here so that each can
//! check the other.

use serde::{Deserialize, Serialize};

use crate::error::{domain, usage, Result};
use crate::quad::{integrate_half_line, QuadOptions};
use crate::specfun;

/// Default cap on the derivative order used by certification.
pub const DEFAULT_MAX_ORDER: u32 = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum RatioFamily {
    /// `Γ(z+1) Γ(z-a-b+1) / (Γ(z-a+1) Γ(z-b+1))`, `z > a + b - 1`.
    TwoParam { a: f64, b: f64 },
    /// `Γ(z+1)^{n-1} Γ(z-ā+1) / ∏ Γ(z-a_i+1)` with `ā = Σ a_i`, `z > ā - 1`.
    MultiParam { a: Vec<f64> },
    /// `∏ Γ(z-a_i) / ∏ Γ(z-b_i)`, `z > max(a ∪ b)`.
    Majorized { a: Vec<f64>, b: Vec<f64> },
    /// `Γ(z+a) Γ(z-a) / Γ(z)^2`, `z > a`.
    Symmetric { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalPath {
    Quadrature,
    Polygamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogDerivResult {
    pub order: u32,
    pub z: f64,
    /// `(-1)^n (ln f)^(n)(z)`.
    pub signed_value: f64,
    pub path: EvalPath,
    pub err_estimate: f64,
}

fn check_param(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(domain(format!("parameter {name} must be finite and >= 0, got {value}")))
    }
}

fn sum(values: &[f64]) -> f64 {
    values.iter().sum()
}

fn max_of(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

impl RatioFamily {
    pub fn name(&self) -> &'static str {
        match self {
            Self::TwoParam { .. } => "two_param",
            Self::MultiParam { .. } => "multi_param",
            Self::Majorized { .. } => "majorized",
            Self::Symmetric { .. } => "symmetric",
        }
    }

    /// Checks that every parameter is finite and nonnegative and that list
    /// lengths are consistent. The majorization precondition is checked by
    /// [`crate::certify`], not here.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::TwoParam { a, b } => {
                check_param("a", *a)?;
                check_param("b", *b)
            }
            Self::MultiParam { a } => {
                if a.is_empty() {
                    return Err(usage("multi_param family needs at least one parameter"));
                }
                a.iter().try_for_each(|&v| check_param("a_i", v))
            }
            Self::Majorized { a, b } => {
                if a.is_empty() || a.len() != b.len() {
                    return Err(usage(format!(
                        "majorized family needs two nonempty lists of equal length, got {} and {}",
                        a.len(),
                        b.len()
                    )));
                }
                a.iter().try_for_each(|&v| check_param("a_i", v))?;
                b.iter().try_for_each(|&v| check_param("b_i", v))
            }
            Self::Symmetric { a } => check_param("a", *a),
        }
    }

    /// Every evaluation requires `z` strictly above this value.
    pub fn domain_lower_bound(&self) -> f64 {
        match self {
            Self::TwoParam { a, b } => a + b - 1.0,
            Self::MultiParam { a } => sum(a) - 1.0,
            Self::Majorized { a, b } => max_of(a).max(max_of(b)),
            Self::Symmetric { a } => *a,
        }
    }

    /// `(c_i, x_i)` with `ln f(z) = Σ c_i ln Γ(x_i)`.
    pub(crate) fn gamma_terms(&self, z: f64) -> Vec<(f64, f64)> {
        match self {
            Self::TwoParam { a, b } => vec![
                (1.0, z + 1.0),
                (1.0, z - (a + b) + 1.0),
                (-1.0, z - a + 1.0),
                (-1.0, z - b + 1.0),
            ],
            Self::MultiParam { a } => {
                let mut terms = vec![((a.len() - 1) as f64, z + 1.0), (1.0, z - sum(a) + 1.0)];
                terms.extend(a.iter().map(|&ai| (-1.0, z - ai + 1.0)));
                terms
            }
            Self::Majorized { a, b } => a
                .iter()
                .map(|&ai| (1.0, z - ai))
                .chain(b.iter().map(|&bi| (-1.0, z - bi)))
                .collect(),
            Self::Symmetric { a } => vec![(1.0, z + a), (1.0, z - a), (-2.0, z)],
        }
    }

    /// Exponential growth rate `c` of the kernel: `K(t) = e^{ct} K̃(t)` with
    /// `K̃` bounded.
    pub fn kernel_growth(&self) -> f64 {
        match self {
            Self::TwoParam { .. } => 0.0,
            Self::MultiParam { a } => sum(a),
            Self::Majorized { a, b } => max_of(a).max(max_of(b)),
            Self::Symmetric { a } => *a,
        }
    }

    /// `K(t) e^{-ct}`, evaluated without overflow or first-order cancellation.
    pub fn kernel_scaled(&self, t: f64) -> f64 {
        let one_minus_exp = |rate: f64| -(-rate * t).exp_m1();
        match self {
            Self::TwoParam { a, b } => one_minus_exp(*a) * one_minus_exp(*b),
            Self::Symmetric { a } => {
                let q = one_minus_exp(*a);
                q * q
            }
            Self::MultiParam { a } => {
                // ξ(t) = Σ_{k≥1} (e^{S_{k-1} t} - 1)(e^{a_k t} - 1), S_k the prefix sums.
                let mut suffix = vec![0.0; a.len() + 1];
                for k in (0..a.len()).rev() {
                    suffix[k] = suffix[k + 1] + a[k];
                }
                let mut prefix = 0.0;
                let mut total = 0.0;
                for (k, &ak) in a.iter().enumerate() {
                    if k > 0 {
                        total += (-suffix[k + 1] * t).exp() * one_minus_exp(prefix) * one_minus_exp(ak);
                    }
                    prefix += ak;
                }
                total
            }
            Self::Majorized { a, b } => {
                let mut a_sorted = a.clone();
                let mut b_sorted = b.clone();
                a_sorted.sort_by(|x, y| y.total_cmp(x));
                b_sorted.sort_by(|x, y| y.total_cmp(x));
                let top = a_sorted[0].max(b_sorted[0]);
                a_sorted
                    .iter()
                    .zip(&b_sorted)
                    .map(|(&x, &y)| {
                        if x >= y {
                            ((x - top) * t).exp() * one_minus_exp(x - y)
                        } else {
                            -((y - top) * t).exp() * one_minus_exp(y - x)
                        }
                    })
                    .sum()
            }
        }
    }

    fn check_z(&self, z: f64) -> Result<()> {
        let bound = self.domain_lower_bound();
        if z.is_finite() && z > bound {
            Ok(())
        } else {
            Err(domain(format!(
                "{} family requires z > {bound}, got z = {z}",
                self.name()
            )))
        }
    }
}

pub fn domain_lower_bound(fam: &RatioFamily) -> f64 {
    fam.domain_lower_bound()
}

/// The kernel factor `K(t)` alone (no `t^{n-1}`, weight or `1/(1-e^{-t})`).
///
/// Returns `+∞` when `K(t)` exceeds the `f64` range; use
/// [`RatioFamily::kernel_scaled`] for the overflow-free form.
pub fn kernel_value(fam: &RatioFamily, t: f64) -> Result<f64> {
    fam.validate()?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(domain(format!("kernel argument must be finite and positive, got {t}")));
    }
    let scaled = fam.kernel_scaled(t);
    let growth = fam.kernel_growth() * t;
    if growth == 0.0 {
        return Ok(scaled);
    }
    Ok(scaled * growth.exp())
}

/// `ln f(z)` as a signed sum of log-gamma values.
pub fn log_f(fam: &RatioFamily, z: f64) -> Result<f64> {
    fam.validate()?;
    fam.check_z(z)?;
    Ok(specfun::ln_gamma_combination(&fam.gamma_terms(z)))
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        return Err(usage("log-derivative order must be at least 1"));
    }
    if n > specfun::MAX_POLYGAMMA_ORDER {
        return Err(usage(format!("log-derivative order {n} is too large")));
    }
    Ok(())
}

/// `(-1)^n (ln f)^(n)(z)` by quadrature of the Laplace-kernel integrand.
pub fn log_deriv_quadrature(
    fam: &RatioFamily,
    z: f64,
    n: u32,
    opts: &QuadOptions,
) -> Result<LogDerivResult> {
    fam.validate()?;
    fam.check_z(z)?;
    check_order(n)?;
    // w(t, z) K(t) = e^{-(z - bound) t} K̃(t) for every family
    let rate = z - fam.domain_lower_bound();
    let power = n as i32 - 1;
    let integrand = |t: f64| {
        let scaled = fam.kernel_scaled(t);
        if scaled == 0.0 {
            return 0.0;
        }
        t.powi(power) * (-rate * t).exp() * scaled / -(-t).exp_m1()
    };
    let r = integrate_half_line(integrand, rate, opts)?;
    Ok(LogDerivResult {
        order: n,
        z,
        signed_value: r.value,
        path: EvalPath::Quadrature,
        err_estimate: r.err_estimate,
    })
}

/// `(-1)^n (ln f)^(n)(z)` as a signed sum of `ψ^(n-1)` values.
pub fn log_deriv_polygamma(fam: &RatioFamily, z: f64, n: u32) -> Result<LogDerivResult> {
    fam.validate()?;
    fam.check_z(z)?;
    check_order(n)?;
    let mut total = 0.0;
    let mut magnitude = 0.0;
    for (c, x) in fam.gamma_terms(z) {
        let v = c * specfun::psi_n(n - 1, x);
        total += v;
        magnitude += v.abs();
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(LogDerivResult {
        order: n,
        z,
        signed_value: sign * total,
        path: EvalPath::Polygamma,
        err_estimate: 32.0 * f64::EPSILON * magnitude,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LN2: f64 = std::f64::consts::LN_2;

    fn two(a: f64, b: f64) -> RatioFamily {
        RatioFamily::TwoParam { a, b }
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(two(1.0, 1.0).domain_lower_bound(), 1.0);
        assert_eq!(RatioFamily::Symmetric { a: 0.0 }.domain_lower_bound(), 0.0);
        let maj = RatioFamily::Majorized { a: vec![0.0, 10.0], b: vec![0.0, 1.0] };
        assert_eq!(maj.domain_lower_bound(), 10.0);
        assert_eq!(RatioFamily::MultiParam { a: vec![1.0, 2.0, 3.0] }.domain_lower_bound(), 5.0);
    }

    #[test]
    fn kernel_examples() {
        assert!((kernel_value(&two(1.0, 1.0), LN2).unwrap() - 0.25).abs() < 1e-15);
        let multi = RatioFamily::MultiParam { a: vec![1.0, 1.0] };
        assert!((kernel_value(&multi, LN2).unwrap() - 1.0).abs() < 1e-15);
        let sym = RatioFamily::Symmetric { a: 1.0 };
        assert!((kernel_value(&sym, LN2).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn multi_kernel_matches_direct_formula() {
        let a = vec![0.3, 1.7, 2.2, 0.0];
        let fam = RatioFamily::MultiParam { a: a.clone() };
        let abar: f64 = a.iter().sum();
        for t in [0.05, 0.4, 1.0, 3.0] {
            let direct = (a.len() - 1) as f64 + (abar * t).exp() - a.iter().map(|ai| (ai * t).exp()).sum::<f64>();
            let got = kernel_value(&fam, t).unwrap();
            assert!((got - direct).abs() <= 1e-12 * direct.abs().max(1.0), "t={t}: {got} vs {direct}");
        }
    }

    #[test]
    fn majorized_kernel_matches_direct_formula() {
        let a = vec![3.0, 1.0];
        let b = vec![2.0, 2.0];
        let fam = RatioFamily::Majorized { a: a.clone(), b: b.clone() };
        for t in [0.1, 0.7, 2.5] {
            let direct: f64 = a.iter().map(|x| (x * t).exp()).sum::<f64>() - b.iter().map(|x| (x * t).exp()).sum::<f64>();
            let got = kernel_value(&fam, t).unwrap();
            assert!((got - direct).abs() <= 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn kernel_rejects_nonpositive_t() {
        assert!(kernel_value(&two(1.0, 1.0), 0.0).is_err());
        assert!(kernel_value(&two(1.0, 1.0), -1.0).is_err());
    }

    #[test]
    fn closed_form_first_derivative() {
        let fam = two(1.0, 1.0);
        let q = log_deriv_quadrature(&fam, 2.0, 1, &QuadOptions::default()).unwrap();
        let p = log_deriv_polygamma(&fam, 2.0, 1).unwrap();
        assert!((q.signed_value - 0.5).abs() <= 1e-10, "{q:?}");
        assert!((p.signed_value - 0.5).abs() <= 1e-14, "{p:?}");
        assert_eq!(q.path, EvalPath::Quadrature);
        assert_eq!(p.path, EvalPath::Polygamma);
    }

    #[test]
    fn zero_parameter_gives_zero() {
        for z in [0.1, 3.0, 40.0] {
            let fam = two(0.0, 2.5);
            let q = log_deriv_quadrature(&fam, z + 1.5, 1, &QuadOptions::default()).unwrap();
            assert_eq!(q.signed_value, 0.0);
        }
    }

    #[test]
    fn symmetric_dual_path() {
        let fam = RatioFamily::Symmetric { a: 0.5 };
        let q = log_deriv_quadrature(&fam, 1.25, 2, &QuadOptions::default()).unwrap();
        let p = log_deriv_polygamma(&fam, 1.25, 2).unwrap();
        assert!(((q.signed_value - p.signed_value) / p.signed_value).abs() <= 1e-8);
    }

    #[test]
    fn symmetric_polygamma_unrolled() {
        let (a, z) = (0.7, 2.3);
        let fam = RatioFamily::Symmetric { a };
        let p = log_deriv_polygamma(&fam, z, 1).unwrap();
        let want = -(specfun::psi(z + a) + specfun::psi(z - a) - 2.0 * specfun::psi(z));
        assert!((p.signed_value - want).abs() <= 1e-15);
    }

    #[test]
    fn multi_dual_path() {
        let fam = RatioFamily::MultiParam { a: vec![2.0, 3.0] };
        let q = log_deriv_quadrature(&fam, 6.0, 1, &QuadOptions::default()).unwrap();
        let p = log_deriv_polygamma(&fam, 6.0, 1).unwrap();
        assert!((q.signed_value - p.signed_value).abs() <= 1e-8 * p.signed_value.abs());
    }

    #[test]
    fn log_f_examples() {
        assert!((log_f(&two(1.0, 1.0), 2.0).unwrap() - LN2).abs() <= 1e-14);
        assert!((log_f(&RatioFamily::Symmetric { a: 1.0 }, 2.0).unwrap() - LN2).abs() <= 1e-14);
        assert!(log_f(&two(0.3, 0.7), 1e6).unwrap().abs() <= 2e-6);
    }

    #[test]
    fn domain_and_order_errors() {
        let fam = two(1.0, 1.0);
        assert!(matches!(log_f(&fam, 1.0), Err(crate::Error::Domain(_))));
        assert!(matches!(log_deriv_polygamma(&fam, 0.5, 1), Err(crate::Error::Domain(_))));
        assert!(matches!(log_deriv_polygamma(&fam, 2.0, 0), Err(crate::Error::Usage(_))));
        assert!(log_deriv_quadrature(&fam, f64::NAN, 1, &QuadOptions::default()).is_err());
        assert!(two(-1.0, 0.0).validate().is_err());
        assert!(RatioFamily::Majorized { a: vec![1.0], b: vec![] }.validate().is_err());
        assert!(RatioFamily::MultiParam { a: vec![] }.validate().is_err());
    }
}
