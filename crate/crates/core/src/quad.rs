//! Double-exponential quadrature on the half line `(0, ∞)`.
//!
//! The integral is split at `split_point`. The head `(0, split]` is handled
//! by tanh-sinh, whose nodes cluster toward the endpoints without ever
//! touching them. The tail is mapped through `s = exp(-decay (t - split))`
//! onto a finite `s`-interval and integrated with the same rule.

use serde::Serialize;

use crate::error::{domain, usage, Error, Result};

/// Tanh-sinh abscissae are generated for `|u| ≤ U_MAX`; beyond that the
/// weights are below `1e-30` of the interval length.
const U_MAX: f64 = 4.0;
const MIN_LEVELS: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub split_point: f64,
    pub max_levels: u32,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            split_point: 1.0,
            max_levels: 12,
        }
    }
}

impl QuadOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(usage("quadrature tolerances must be positive"));
        }
        if !(self.split_point > 0.0 && self.split_point.is_finite()) {
            return Err(usage("quadrature split point must be finite and positive"));
        }
        if self.max_levels == 0 {
            return Err(usage("quadrature needs at least one refinement level"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Integrates `f` over `(0, ∞)`.
///
/// `f` must have a finite limit at `0+` and satisfy `|f(t)| ≤ C e^{-decay_rate t}`
/// for large `t`. The tail is truncated once `e^{-decay_rate t}` falls below
/// `abs_tol / 10`, and pushed further out while the integrand itself is
/// still above that level (polynomial prefactors).
pub fn integrate_half_line<F>(f: F, decay_rate: f64, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    opts.validate()?;
    if !(decay_rate > 0.0 && decay_rate.is_finite()) {
        return Err(usage(format!("decay rate must be finite and positive, got {decay_rate}")));
    }
    let split = opts.split_point;
    let mut evaluations = 0usize;

    let head = tanh_sinh(&f, 0.0, split, opts, &mut evaluations)?;

    let tail_level = opts.abs_tol / 10.0;
    let step = std::f64::consts::LN_10 / decay_rate;
    let mut end = split + (10.0 / opts.abs_tol).ln() / decay_rate;
    let mut tail_bound = f(end).abs() / decay_rate;
    evaluations += 1;
    for _ in 0..400 {
        if tail_bound <= tail_level {
            break;
        }
        end += step;
        tail_bound = f(end).abs() / decay_rate;
        evaluations += 1;
    }
    if !tail_bound.is_finite() {
        return Err(domain(format!("integrand is not finite at t = {end}")));
    }

    let s_end = (-decay_rate * (end - split)).exp();
    let mapped = |s: f64| {
        let t = split - s.ln() / decay_rate;
        f(t) / (decay_rate * s)
    };
    let body = tanh_sinh(&mapped, s_end, 1.0, opts, &mut evaluations)?;

    let value = head.value + body.value;
    let err_estimate = head.err_estimate + body.err_estimate + tail_bound;
    if !head.converged || !body.converged {
        return Err(Error::Convergence { value, err_estimate });
    }
    Ok(QuadResult {
        value,
        err_estimate,
        evaluations,
    })
}

struct Piece {
    value: f64,
    err_estimate: f64,
    converged: bool,
}

/// Tanh-sinh on `[a, b]`, halving the step until successive levels agree.
///
/// Nodes are placed at `a + (b-a) σ(-2v)` and `b - (b-a) σ(-2v)` with
/// `v = (π/2) sinh(u)` and `σ` the logistic function, so offsets from either
/// endpoint are computed without cancellation.
fn tanh_sinh<F>(f: &F, a: f64, b: f64, opts: &QuadOptions, evaluations: &mut usize) -> Result<Piece>
where
    F: Fn(f64) -> f64,
{
    let width = b - a;
    let half_pi = std::f64::consts::FRAC_PI_2;

    // (weighted sum, sum of |weighted terms|) over all nodes added so far
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut add_node = |u: f64, sum: &mut f64, abs_sum: &mut f64| -> Result<()> {
        let v = half_pi * u.sinh();
        let offset = width * logistic(-2.0 * v.abs());
        let weight = width * std::f64::consts::PI * u.cosh() * logistic(2.0 * v) * logistic(-2.0 * v);
        let points: &[f64] = if u == 0.0 { &[a + 0.5 * width] } else { &[a + offset, b - offset] };
        for &x in points {
            if x <= a || x >= b {
                continue;
            }
            let fx = f(x);
            *evaluations += 1;
            if !fx.is_finite() {
                return Err(domain(format!("integrand is not finite at t = {x}")));
            }
            *sum += weight * fx;
            *abs_sum += (weight * fx).abs();
        }
        Ok(())
    };

    let mut h = 1.0;
    let mut k = 0u32;
    while f64::from(k) * h <= U_MAX {
        add_node(f64::from(k) * h, &mut sum, &mut abs_sum)?;
        k += 1;
    }
    let mut estimate = h * sum;
    let mut last_diff = f64::INFINITY;

    for level in 1..=opts.max_levels {
        h *= 0.5;
        let mut k = 1u32;
        while f64::from(k) * h <= U_MAX {
            add_node(f64::from(k) * h, &mut sum, &mut abs_sum)?;
            k += 2;
        }
        let refined = h * sum;
        last_diff = (refined - estimate).abs();
        estimate = refined;
        let roundoff = 64.0 * f64::EPSILON * h * abs_sum;
        let target = (opts.rel_tol * estimate.abs()).max(opts.abs_tol) * 0.25;
        if level >= MIN_LEVELS && last_diff <= target.max(roundoff) {
            return Ok(Piece {
                value: estimate,
                err_estimate: last_diff + roundoff,
                converged: true,
            });
        }
    }
    Ok(Piece {
        value: estimate,
        err_estimate: last_diff + 64.0 * f64::EPSILON * h * abs_sum,
        converged: false,
    })
}

fn logistic(s: f64) -> f64 {
    if s >= 0.0 {
        1.0 / (1.0 + (-s).exp())
    } else {
        let e = s.exp();
        e / (1.0 + e)
    }
}
