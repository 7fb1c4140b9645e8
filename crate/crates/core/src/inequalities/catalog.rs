use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use super::{lg, Arity, Evaluation, InequalityCase, Side};
use crate::certify::check_weak_submajorization;
use crate::kernels::RatioFamily;
use crate::specfun;

type Check = std::result::Result<(), String>;

fn require(ok: bool, what: &str) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn uniform(rng: &mut dyn RngCore, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

/// Log-uniform on `[lo, hi)`.
fn log_uniform(rng: &mut dyn RngCore, lo: f64, hi: f64) -> f64 {
    uniform(rng, lo.ln(), hi.ln()).exp()
}

/// Offset above a boundary: zero now and then when the boundary is closed,
/// otherwise log-uniform over six decades.
fn offset(rng: &mut dyn RngCore, closed: bool) -> f64 {
    if closed && rng.gen_bool(0.05) {
        0.0
    } else {
        log_uniform(rng, 1e-3, 1e3)
    }
}

/// `0 < a ≤ b`
fn sample_ab(rng: &mut dyn RngCore) -> (f64, f64) {
    let a = uniform(rng, 1e-3, 5.0);
    (a, a + uniform(rng, 0.0, 5.0))
}

fn ab_ordered(p: &[f64]) -> Check {
    require(p[0] > 0.0 && p[0] <= p[1], "0 < a <= b")
}

fn two_param(p: &[f64], z: f64) -> f64 {
    lg(&RatioFamily::TwoParam { a: p[0], b: p[1] }.gamma_terms(z))
}

fn two_param_terms(a: f64, b: f64, z: f64) -> Vec<(f64, f64)> {
    RatioFamily::TwoParam { a, b }.gamma_terms(z)
}

fn negated(terms: Vec<(f64, f64)>) -> impl Iterator<Item = (f64, f64)> {
    terms.into_iter().map(|(c, x)| (-c, x))
}

/// `ln(Γ(z+a)Γ(z-a)/Γ(z)²)`
fn symmetric(a: f64, z: f64) -> f64 {
    lg(&[(1.0, z + a), (1.0, z - a), (-2.0, z)])
}

/// `ln(z²/(z²-a²))`
fn sym_floor(a: f64, z: f64) -> f64 {
    let r = a / z;
    -(-r * r).ln_1p()
}

fn sym_ceiling(a: f64, z: f64) -> f64 {
    specfun::reflection_product(a).expect("0 < a < 1").ln() + sym_floor(a, z)
}

/// `ln(Γ(z)Γ(z-2a)/Γ(z-a)²)`
fn inq58_target(a: f64, z: f64) -> f64 {
    lg(&[(1.0, z), (1.0, z - 2.0 * a), (-2.0, z - a)])
}

fn inq58_domain(p: &[f64], x: &[f64]) -> Check {
    require(p[0] >= 0.0, "a >= 0")?;
    require(x[0] > 2.0 * p[0] && x[0] > 0.0, "z > 2a and z > 0")
}

fn inq58_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    let a = uniform(rng, 0.0, 10.0);
    (vec![a], vec![2.0 * a + offset(rng, false)])
}

fn inq56_target(a: f64, b: f64, z: f64) -> f64 {
    lg(&[(1.0, z - (a + b) + 1.0), (-1.0, z - a + 1.0), (-1.0, z - b + 1.0)])
}

fn inq57_domain(p: &[f64], x: &[f64]) -> Check {
    ab_ordered(p)?;
    require(x[0] >= p[0] + p[1], "z >= a + b")
}

fn inq57_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    let (a, b) = sample_ab(rng);
    (vec![a, b], vec![a + b + offset(rng, true)])
}

fn half_domain(_: &[f64], x: &[f64]) -> Check {
    require(x[0] > 0.5, "z > 1/2")
}

fn half_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    (vec![], vec![0.5 + offset(rng, false)])
}

fn wallis_target(z: f64) -> f64 {
    lg(&[(1.0, z + 0.5), (-1.0, z + 1.0)])
}

fn nonneg_z(_: &[f64], x: &[f64]) -> Check {
    require(x[0] >= 0.0, "z >= 0")
}

fn nonneg_z_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    (vec![], vec![offset(rng, true)])
}

fn positive_z(_: &[f64], x: &[f64]) -> Check {
    require(x[0] > 0.0, "z > 0")
}

fn positive_z_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    (vec![], vec![offset(rng, false)])
}

fn sym_sandwich_domain(p: &[f64], x: &[f64]) -> Check {
    require(p[0] > 0.0 && p[0] < 1.0, "0 < a < 1")?;
    require(x[0] > p[0], "z > a")
}

fn sym_sandwich_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    let a = uniform(rng, 1e-6, 1.0);
    (vec![a], vec![a + offset(rng, false)])
}

fn inq3_domain(p: &[f64], x: &[f64]) -> Check {
    require(p[0] >= 0.0 && p[0] < 1.0, "0 <= a < 1")?;
    require(x[0] >= 0.0, "z >= 0")
}

fn inq3_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    (vec![uniform(rng, 0.0, 1.0)], vec![offset(rng, true)])
}

fn inq3_target(a: f64, z: f64) -> f64 {
    lg(&[(1.0, z + a + 1.0), (1.0, z - a + 1.0), (-2.0, z + 1.0)])
}

fn positive_ab(_: &[f64], x: &[f64]) -> Check {
    require(x[0] > 0.0 && x[1] > 0.0, "a > 0 and b > 0")
}

fn positive_ab_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    (vec![], vec![log_uniform(rng, 1e-3, 1e2), log_uniform(rng, 1e-3, 1e2)])
}

fn unit_ab(_: &[f64], x: &[f64]) -> Check {
    require(x[0] > 0.0 && x[0] <= 1.0 && x[1] > 0.0 && x[1] <= 1.0, "0 < a <= 1 and 0 < b <= 1")
}

fn unit_ab_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    (vec![], vec![1.0 - uniform(rng, 0.0, 1.0), 1.0 - uniform(rng, 0.0, 1.0)])
}

fn unit_a(_: &[f64], x: &[f64]) -> Check {
    require(x[0] > 0.0 && x[0] <= 1.0, "0 < a <= 1")
}

fn unit_a_sample(rng: &mut dyn RngCore) -> (Vec<f64>, Vec<f64>) {
    (vec![], vec![1.0 - uniform(rng, 0.0, 1.0)])
}

fn log_beta(a: f64, b: f64) -> f64 {
    lg(&[(1.0, a), (1.0, b), (-1.0, a + b)])
}

fn dup_target(a: f64) -> f64 {
    lg(&[(2.0, a), (-1.0, 2.0 * a)])
}

fn psi_ratio(s: f64, x: f64, y: f64) -> f64 {
    lg(&[(1.0, x + 1.0), (1.0, y - s + 1.0), (-1.0, y + 1.0), (-1.0, x - s + 1.0)])
}

fn sample_xy_above(rng: &mut dyn RngCore, floor: f64) -> Vec<f64> {
    let x = floor + offset(rng, false);
    vec![x, x + offset(rng, false)]
}

const T_INQ1: &str = "Γ(z+1)Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1))";
const T_SYM: &str = "Γ(z+a)Γ(z-a)/Γ(z)²";
const T_INQ3: &str = "Γ(z+a+1)Γ(z-a+1)/Γ(z+1)²";
const T_HALF: &str = "Γ(z+1/2)Γ(z-1/2)/Γ(z)²";
const T_WALLIS: &str = "Γ(z+1/2)/Γ(z+1)";
const T_WALLIS_Z: &str = "Γ(z+1/2)/Γ(z)";
const T_BETA: &str = "B(a,b)";
const T_DUP: &str = "Γ(a)²/Γ(2a)";
const T_INQ56: &str = "Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1))";
const T_INQ58: &str = "Γ(z)Γ(z-2a)/Γ(z-a)²";
const P_A: &[&str] = &["a"];
const P_AB: &[&str] = &["a", "b"];
const P_NONE: &[&str] = &[];
const X_Z: &[&str] = &["z"];
const X_XY: &[&str] = &["x", "y"];
const X_A: &[&str] = &["a"];
const X_AB: &[&str] = &["a", "b"];

pub(super) fn cases() -> Vec<InequalityCase> {
    vec![
        InequalityCase {
            id: "INQ1",
            params: Arity::Fixed(P_AB),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ1,
            bound: "1",
            domain_text: "a >= 0, b >= 0, z > a + b - 1",
            baseline: false,
            domain: |p, x| {
                require(p[0] >= 0.0 && p[1] >= 0.0, "a >= 0 and b >= 0")?;
                require(x[0] > p[0] + p[1] - 1.0, "z > a + b - 1")
            },
            eval: |p, x| Evaluation::lower(two_param(p, x[0]), 0.0),
            sample: |rng| {
                let (a, b) = (uniform(rng, 0.0, 5.0), uniform(rng, 0.0, 5.0));
                (vec![a, b], vec![a + b - 1.0 + offset(rng, false)])
            },
        },
        InequalityCase {
            id: "MULTI_GE1",
            params: Arity::List("a"),
            point: X_Z,
            side: Side::Lower,
            target: "Γ(z+1)^(n-1)Γ(z-ā+1)/∏Γ(z-a_i+1), ā = Σa_i",
            bound: "1",
            domain_text: "a_i >= 0, z > Σa_i - 1",
            baseline: false,
            domain: |p, x| {
                require(p.iter().all(|&v| v >= 0.0), "a_i >= 0")?;
                require(x[0] > p.iter().sum::<f64>() - 1.0, "z > Σa_i - 1")
            },
            eval: |p, x| Evaluation::lower(lg(&RatioFamily::MultiParam { a: p.to_vec() }.gamma_terms(x[0])), 0.0),
            sample: |rng| {
                let n = rng.gen_range(1..=5);
                let a: Vec<f64> = (0..n).map(|_| uniform(rng, 0.0, 4.0)).collect();
                let z = a.iter().sum::<f64>() - 1.0 + offset(rng, false);
                (a, vec![z])
            },
        },
        InequalityCase {
            id: "MAJOR_GE1",
            params: Arity::PairedLists("a", "b"),
            point: X_Z,
            side: Side::Lower,
            target: "∏Γ(z-a_i)/∏Γ(z-b_i)",
            bound: "1",
            domain_text: "a_i, b_i >= 0, b weakly submajorized by a, Σa_i = Σb_i, z > max(a ∪ b)",
            baseline: false,
            domain: |p, x| {
                require(p.iter().all(|&v| v >= 0.0), "a_i >= 0 and b_i >= 0")?;
                let (a, b) = p.split_at(p.len() / 2);
                require(check_weak_submajorization(a, b).unwrap_or(false), "b weakly submajorized by a")?;
                let (sa, sb) = (a.iter().sum::<f64>(), b.iter().sum::<f64>());
                require((sa - sb).abs() <= 1e-9 * sa.max(1.0), "Σa_i = Σb_i")?;
                let m = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                require(x[0] > m, "z > max(a ∪ b)")
            },
            eval: |p, x| {
                let (a, b) = p.split_at(p.len() / 2);
                let fam = RatioFamily::Majorized { a: a.to_vec(), b: b.to_vec() };
                Evaluation::lower(lg(&fam.gamma_terms(x[0])), 0.0)
            },
            sample: |rng| {
                // b = λa + (1-λ)Pa is doubly stochastic in a, hence majorized by it
                let n = rng.gen_range(1..=5);
                let a: Vec<f64> = (0..n).map(|_| uniform(rng, 0.0, 10.0)).collect();
                let mut perm = a.clone();
                perm.shuffle(rng);
                let lambda = uniform(rng, 0.0, 1.0);
                let b: Vec<f64> = a.iter().zip(&perm).map(|(x, y)| lambda * x + (1.0 - lambda) * y).collect();
                let m = a.iter().chain(&b).copied().fold(0.0, f64::max);
                let z = m + offset(rng, false);
                ([a, b].concat(), vec![z])
            },
        },
        InequalityCase {
            id: "MEAN2",
            params: Arity::Fixed(P_NONE),
            point: X_XY,
            side: Side::Lower,
            target: "Γ(x+1)Γ(y+1)/Γ((x+y)/2+1)²",
            bound: "1",
            domain_text: "x > 0, y > 0",
            baseline: false,
            domain: |_, x| require(x[0] > 0.0 && x[1] > 0.0, "x > 0 and y > 0"),
            eval: |_, x| {
                let m = 0.5 * (x[0] + x[1]);
                Evaluation::lower(lg(&[(1.0, x[0] + 1.0), (1.0, x[1] + 1.0), (-2.0, m + 1.0)]), 0.0)
            },
            sample: |rng| (vec![], vec![log_uniform(rng, 1e-3, 1e3), log_uniform(rng, 1e-3, 1e3)]),
        },
        InequalityCase {
            id: "MEAN2_RECIP",
            params: Arity::Fixed(P_NONE),
            point: X_XY,
            side: Side::Lower,
            target: "Γ(x)Γ(y)/Γ((x+y)/2)²",
            bound: "(x+y)²/(4xy)",
            domain_text: "x > 0, y > 0",
            baseline: false,
            domain: |_, x| require(x[0] > 0.0 && x[1] > 0.0, "x > 0 and y > 0"),
            eval: |_, x| {
                let (a, b) = (x[0], x[1]);
                let m = 0.5 * (a + b);
                let target = lg(&[(1.0, a), (1.0, b), (-2.0, m)]);
                Evaluation::lower(target, 2.0 * m.ln() - a.ln() - b.ln())
            },
            sample: |rng| (vec![], vec![log_uniform(rng, 1e-3, 1e3), log_uniform(rng, 1e-3, 1e3)]),
        },
        InequalityCase {
            id: "SYM_GE1",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Lower,
            target: T_SYM,
            bound: "1",
            domain_text: "a >= 0, z > a",
            baseline: false,
            domain: |p, x| {
                require(p[0] >= 0.0, "a >= 0")?;
                require(x[0] > p[0], "z > a")
            },
            eval: |p, x| Evaluation::lower(symmetric(p[0], x[0]), 0.0),
            sample: |rng| {
                let a = uniform(rng, 0.0, 10.0);
                (vec![a], vec![a + offset(rng, false)])
            },
        },
        InequalityCase {
            id: "INQ2",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ3,
            bound: "1",
            domain_text: "a >= 0, z > a - 1",
            baseline: false,
            domain: |p, x| {
                require(p[0] >= 0.0, "a >= 0")?;
                require(x[0] > p[0] - 1.0, "z > a - 1")
            },
            eval: |p, x| Evaluation::lower(inq3_target(p[0], x[0]), 0.0),
            sample: |rng| {
                let a = uniform(rng, 0.0, 10.0);
                (vec![a], vec![a - 1.0 + offset(rng, false)])
            },
        },
        InequalityCase {
            id: "INQ3_LB",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ3,
            bound: "1",
            domain_text: "0 <= a < 1, z >= 0",
            baseline: false,
            domain: inq3_domain,
            eval: |p, x| Evaluation::lower(inq3_target(p[0], x[0]), 0.0),
            sample: inq3_sample,
        },
        InequalityCase {
            id: "INQ3_UB",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Upper,
            target: T_INQ3,
            bound: "Γ(1-a)Γ(1+a)",
            domain_text: "0 <= a < 1, z >= 0",
            baseline: false,
            domain: inq3_domain,
            eval: |p, x| {
                let (a, z) = (p[0], x[0]);
                let bound = lg(&[(1.0, 1.0 - a), (1.0, 1.0 + a)]);
                let margin = lg(&[
                    (1.0, 1.0 - a),
                    (1.0, 1.0 + a),
                    (-1.0, z + a + 1.0),
                    (-1.0, z - a + 1.0),
                    (2.0, z + 1.0),
                ]);
                Evaluation::with_margin(inq3_target(a, z), bound, margin)
            },
            sample: inq3_sample,
        },
        InequalityCase {
            id: "SYM_SANDWICH_LB",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Lower,
            target: T_SYM,
            bound: "z²/(z²-a²)",
            domain_text: "0 < a < 1, z > a",
            baseline: false,
            domain: sym_sandwich_domain,
            eval: |p, x| Evaluation::lower(symmetric(p[0], x[0]), sym_floor(p[0], x[0])),
            sample: sym_sandwich_sample,
        },
        InequalityCase {
            id: "SYM_SANDWICH_UB",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Upper,
            target: T_SYM,
            bound: "πa z²/(sin(πa)(z²-a²))",
            domain_text: "0 < a < 1, z > a",
            baseline: false,
            domain: sym_sandwich_domain,
            eval: |p, x| Evaluation::upper(symmetric(p[0], x[0]), sym_ceiling(p[0], x[0])),
            sample: sym_sandwich_sample,
        },
        InequalityCase {
            id: "HALF_SANDWICH_LB",
            params: Arity::Fixed(P_NONE),
            point: X_Z,
            side: Side::Lower,
            target: T_HALF,
            bound: "4z²/(4z²-1)",
            domain_text: "z > 1/2",
            baseline: false,
            domain: half_domain,
            eval: |_, x| Evaluation::lower(symmetric(0.5, x[0]), sym_floor(0.5, x[0])),
            sample: half_sample,
        },
        InequalityCase {
            id: "HALF_SANDWICH_UB",
            params: Arity::Fixed(P_NONE),
            point: X_Z,
            side: Side::Upper,
            target: T_HALF,
            bound: "2πz²/(4z²-1)",
            domain_text: "z > 1/2",
            baseline: false,
            domain: half_domain,
            eval: |_, x| {
                let bound = std::f64::consts::FRAC_PI_2.ln() + sym_floor(0.5, x[0]);
                Evaluation::upper(symmetric(0.5, x[0]), bound)
            },
            sample: half_sample,
        },
        InequalityCase {
            id: "WALLIS_LB",
            params: Arity::Fixed(P_NONE),
            point: X_Z,
            side: Side::Lower,
            target: T_WALLIS,
            bound: "(2/(2z+1))^(1/2)",
            domain_text: "z >= 0",
            baseline: false,
            domain: nonneg_z,
            eval: |_, x| Evaluation::lower(wallis_target(x[0]), -0.5 * (x[0] + 0.5).ln()),
            sample: nonneg_z_sample,
        },
        InequalityCase {
            id: "WALLIS_UB",
            params: Arity::Fixed(P_NONE),
            point: X_Z,
            side: Side::Upper,
            target: T_WALLIS,
            bound: "(π/(2z+1))^(1/2)",
            domain_text: "z >= 0",
            baseline: false,
            domain: nonneg_z,
            eval: |_, x| {
                let bound = 0.5 * (std::f64::consts::PI.ln() - (2.0 * x[0] + 1.0).ln());
                Evaluation::upper(wallis_target(x[0]), bound)
            },
            sample: nonneg_z_sample,
        },
        InequalityCase {
            id: "WALLIS_Z_LB",
            params: Arity::Fixed(P_NONE),
            point: X_Z,
            side: Side::Lower,
            target: T_WALLIS_Z,
            bound: "(2z²/(2z+1))^(1/2)",
            domain_text: "z > 0",
            baseline: false,
            domain: positive_z,
            eval: |_, x| {
                let z = x[0];
                let target = lg(&[(1.0, z + 0.5), (-1.0, z)]);
                Evaluation::lower(target, z.ln() - 0.5 * (z + 0.5).ln())
            },
            sample: positive_z_sample,
        },
        InequalityCase {
            id: "WALLIS_Z_UB",
            params: Arity::Fixed(P_NONE),
            point: X_Z,
            side: Side::Upper,
            target: T_WALLIS_Z,
            bound: "(πz²/(2z+1))^(1/2)",
            domain_text: "z > 0",
            baseline: false,
            domain: positive_z,
            eval: |_, x| {
                let z = x[0];
                let target = lg(&[(1.0, z + 0.5), (-1.0, z)]);
                let bound = z.ln() + 0.5 * (std::f64::consts::PI.ln() - (2.0 * z + 1.0).ln());
                Evaluation::upper(target, bound)
            },
            sample: positive_z_sample,
        },
        InequalityCase {
            id: "H_OMEGA",
            params: Arity::Fixed(P_AB),
            point: X_XY,
            side: Side::Lower,
            target: "h(x,y) = f(x)/f(y), f(z) = Γ(z+1)Γ(z-a-b+1)/(Γ(z-a+1)Γ(z-b+1))",
            bound: "1",
            domain_text: "0 < a <= b, a + b <= x <= y",
            baseline: false,
            domain: |p, x| {
                ab_ordered(p)?;
                require(p[0] + p[1] <= x[0] && x[0] <= x[1], "a + b <= x <= y")
            },
            eval: |p, x| {
                let mut terms = two_param_terms(p[0], p[1], x[0]);
                terms.extend(negated(two_param_terms(p[0], p[1], x[1])));
                Evaluation::lower(lg(&terms), 0.0)
            },
            sample: |rng| {
                let (a, b) = sample_ab(rng);
                let x = a + b + offset(rng, true);
                (vec![a, b], vec![x, x + offset(rng, true)])
            },
        },
        InequalityCase {
            id: "G_LE1",
            params: Arity::Fixed(P_AB),
            point: X_Z,
            side: Side::Upper,
            target: "Γ(z-a+1)Γ(z-b+1)/(Γ(z+1)Γ(z-a-b+1))",
            bound: "1",
            domain_text: "0 < a <= b, z >= a + b",
            baseline: false,
            domain: inq57_domain,
            eval: |p, x| Evaluation::upper(-two_param(p, x[0]), 0.0),
            sample: inq57_sample,
        },
        InequalityCase {
            id: "PSI_XY",
            params: Arity::Fixed(P_A),
            point: X_XY,
            side: Side::Upper,
            target: "Γ(x+1)Γ(y-a+1)/(Γ(y+1)Γ(x-a+1))",
            bound: "1",
            domain_text: "0 < a < x < y",
            baseline: false,
            domain: |p, x| require(0.0 < p[0] && p[0] < x[0] && x[0] < x[1], "0 < a < x < y"),
            eval: |p, x| Evaluation::upper(psi_ratio(p[0], x[0], x[1]), 0.0),
            sample: |rng| {
                let a = uniform(rng, 1e-3, 5.0);
                (vec![a], sample_xy_above(rng, a))
            },
        },
        InequalityCase {
            id: "PSI_XY_AB",
            params: Arity::Fixed(P_AB),
            point: X_XY,
            side: Side::Upper,
            target: "Γ(x+1)Γ(y-a-b+1)/(Γ(y+1)Γ(x-a-b+1))",
            bound: "1",
            domain_text: "0 < a <= b, a + b < x < y",
            baseline: false,
            domain: |p, x| {
                ab_ordered(p)?;
                require(p[0] + p[1] < x[0] && x[0] < x[1], "a + b < x < y")
            },
            eval: |p, x| Evaluation::upper(psi_ratio(p[0] + p[1], x[0], x[1]), 0.0),
            sample: |rng| {
                let (a, b) = sample_ab(rng);
                (vec![a, b], sample_xy_above(rng, a + b))
            },
        },
        InequalityCase {
            id: "INQ51",
            params: Arity::Fixed(P_NONE),
            point: X_AB,
            side: Side::Lower,
            target: "Γ(a+b+1)/(Γ(a+1)Γ(b+1))",
            bound: "1",
            domain_text: "a >= 0, b >= 0",
            baseline: false,
            domain: |_, x| require(x[0] >= 0.0 && x[1] >= 0.0, "a >= 0 and b >= 0"),
            eval: |_, x| {
                let (a, b) = (x[0], x[1]);
                Evaluation::lower(lg(&[(1.0, a + b + 1.0), (-1.0, a + 1.0), (-1.0, b + 1.0)]), 0.0)
            },
            sample: |rng| (vec![], vec![offset(rng, true), offset(rng, true)]),
        },
        InequalityCase {
            id: "INQ53",
            params: Arity::Fixed(P_NONE),
            point: X_AB,
            side: Side::Lower,
            target: "Γ(a+b)/(Γ(a)Γ(b))",
            bound: "ab/(a+b)",
            domain_text: "a > 0, b > 0",
            baseline: false,
            domain: positive_ab,
            eval: |_, x| {
                let (a, b) = (x[0], x[1]);
                Evaluation::lower(-log_beta(a, b), a.ln() + b.ln() - (a + b).ln())
            },
            sample: positive_ab_sample,
        },
        InequalityCase {
            id: "BETA_UB",
            params: Arity::Fixed(P_NONE),
            point: X_AB,
            side: Side::Upper,
            target: T_BETA,
            bound: "(a+b)/(ab)",
            domain_text: "a > 0, b > 0",
            baseline: false,
            domain: positive_ab,
            eval: |_, x| {
                let (a, b) = (x[0], x[1]);
                Evaluation::upper(log_beta(a, b), (a + b).ln() - a.ln() - b.ln())
            },
            sample: positive_ab_sample,
        },
        InequalityCase {
            id: "BETA_UB_SHIFT_B",
            params: Arity::Fixed(P_NONE),
            point: X_AB,
            side: Side::Upper,
            target: "B(a,b+1)",
            bound: "1/a",
            domain_text: "a > 0, b > 0",
            baseline: false,
            domain: positive_ab,
            eval: |_, x| Evaluation::upper(log_beta(x[0], x[1] + 1.0), -x[0].ln()),
            sample: positive_ab_sample,
        },
        InequalityCase {
            id: "BETA_UB_SHIFT_A",
            params: Arity::Fixed(P_NONE),
            point: X_AB,
            side: Side::Upper,
            target: "B(a+1,b)",
            bound: "1/b",
            domain_text: "a > 0, b > 0",
            baseline: false,
            domain: positive_ab,
            eval: |_, x| Evaluation::upper(log_beta(x[0] + 1.0, x[1]), -x[1].ln()),
            sample: positive_ab_sample,
        },
        InequalityCase {
            id: "BETA_UB_DRAGOMIR",
            params: Arity::Fixed(P_NONE),
            point: X_AB,
            side: Side::Upper,
            target: T_BETA,
            bound: "1/(ab)",
            domain_text: "0 < a <= 1, 0 < b <= 1",
            baseline: true,
            domain: unit_ab,
            eval: |_, x| Evaluation::upper(log_beta(x[0], x[1]), -x[0].ln() - x[1].ln()),
            sample: unit_ab_sample,
        },
        InequalityCase {
            id: "INQ54",
            params: Arity::Fixed(P_NONE),
            point: X_A,
            side: Side::Lower,
            target: "Γ(2a+1)/Γ(a+1)²",
            bound: "1",
            domain_text: "a >= 0",
            baseline: false,
            domain: |_, x| require(x[0] >= 0.0, "a >= 0"),
            eval: |_, x| Evaluation::lower(lg(&[(1.0, 2.0 * x[0] + 1.0), (-2.0, x[0] + 1.0)]), 0.0),
            sample: |rng| (vec![], vec![offset(rng, true)]),
        },
        InequalityCase {
            id: "INQ55",
            params: Arity::Fixed(P_NONE),
            point: X_A,
            side: Side::Lower,
            target: "Γ(2a)/Γ(a)²",
            bound: "a/2",
            domain_text: "a > 0",
            baseline: false,
            domain: |_, x| require(x[0] > 0.0, "a > 0"),
            eval: |_, x| Evaluation::lower(-dup_target(x[0]), (0.5 * x[0]).ln()),
            sample: |rng| (vec![], vec![offset(rng, false)]),
        },
        InequalityCase {
            id: "DUP_SANDWICH_LB",
            params: Arity::Fixed(P_NONE),
            point: X_A,
            side: Side::Lower,
            target: T_DUP,
            bound: "(2a-a²)/a²",
            domain_text: "0 < a <= 1",
            baseline: true,
            domain: unit_a,
            eval: |_, x| Evaluation::lower(dup_target(x[0]), (2.0 - x[0]).ln() - x[0].ln()),
            sample: unit_a_sample,
        },
        InequalityCase {
            id: "DUP_SANDWICH_UB",
            params: Arity::Fixed(P_NONE),
            point: X_A,
            side: Side::Upper,
            target: T_DUP,
            bound: "2/a",
            domain_text: "0 < a <= 1",
            baseline: false,
            domain: unit_a,
            eval: |_, x| Evaluation::upper(dup_target(x[0]), (2.0 / x[0]).ln()),
            sample: unit_a_sample,
        },
        InequalityCase {
            id: "INQ56",
            params: Arity::Fixed(P_AB),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ56,
            bound: "1/Γ(z+1)",
            domain_text: "0 < a <= b, a + b <= z <= 1",
            baseline: false,
            domain: |p, x| {
                ab_ordered(p)?;
                require(p[0] + p[1] <= x[0] && x[0] <= 1.0, "a + b <= z <= 1")
            },
            eval: |p, x| {
                let z = x[0];
                let bound = -specfun::ln_gamma(z + 1.0);
                Evaluation::with_margin(inq56_target(p[0], p[1], z), bound, two_param(p, z))
            },
            sample: |rng| {
                let a = uniform(rng, 1e-3, 0.5);
                let b = uniform(rng, a, 1.0 - a);
                (vec![a, b], vec![uniform(rng, a + b, 1.0)])
            },
        },
        InequalityCase {
            id: "INQ56_GAMMA",
            params: Arity::Fixed(P_NONE),
            point: X_Z,
            side: Side::Lower,
            target: "1/Γ(z+1)",
            bound: "1",
            domain_text: "0 < z <= 1",
            baseline: false,
            domain: |_, x| require(x[0] > 0.0 && x[0] <= 1.0, "0 < z <= 1"),
            eval: |_, x| Evaluation::lower(-specfun::ln_gamma(x[0] + 1.0), 0.0),
            sample: |rng| (vec![], vec![1.0 - uniform(rng, 0.0, 1.0)]),
        },
        InequalityCase {
            id: "INQ57_LB",
            params: Arity::Fixed(P_AB),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ56,
            bound: "1/Γ(z+1)",
            domain_text: "0 < a <= b, z >= a + b",
            baseline: false,
            domain: inq57_domain,
            eval: |p, x| {
                let z = x[0];
                let bound = -specfun::ln_gamma(z + 1.0);
                Evaluation::with_margin(inq56_target(p[0], p[1], z), bound, two_param(p, z))
            },
            sample: inq57_sample,
        },
        InequalityCase {
            id: "INQ57_UB",
            params: Arity::Fixed(P_AB),
            point: X_Z,
            side: Side::Upper,
            target: T_INQ56,
            bound: "Γ(a+b+1)/(Γ(z+1)Γ(a+1)Γ(b+1))",
            domain_text: "0 < a <= b, z >= a + b",
            baseline: false,
            domain: inq57_domain,
            eval: |p, x| {
                let (a, b, z) = (p[0], p[1], x[0]);
                let bound_terms = [(1.0, a + b + 1.0), (-1.0, a + 1.0), (-1.0, b + 1.0), (-1.0, z + 1.0)];
                // f(a+b) ≥ f(z): fold both sides into one sum
                let mut terms = two_param_terms(a, b, a + b);
                terms.extend(negated(two_param_terms(a, b, z)));
                Evaluation::with_margin(inq56_target(a, b, z), lg(&bound_terms), lg(&terms))
            },
            sample: inq57_sample,
        },
        InequalityCase {
            id: "INQ58",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ58,
            bound: "1 + a²/(z(z-2a))",
            domain_text: "a >= 0, z > 2a, z > 0",
            baseline: false,
            domain: inq58_domain,
            eval: |p, x| {
                let (a, z) = (p[0], x[0]);
                Evaluation::lower(inq58_target(a, z), (a * a / (z * (z - 2.0 * a))).ln_1p())
            },
            sample: inq58_sample,
        },
        InequalityCase {
            id: "INQ58_GE1",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ58,
            bound: "1",
            domain_text: "a >= 0, z > 2a, z > 0",
            baseline: false,
            domain: inq58_domain,
            eval: |p, x| Evaluation::lower(inq58_target(p[0], x[0]), 0.0),
            sample: inq58_sample,
        },
        InequalityCase {
            id: "INQ580",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ58,
            bound: "(a²+z)/z",
            domain_text: "a >= 0, z > 2a, z > 0",
            baseline: true,
            domain: inq58_domain,
            eval: |p, x| {
                let (a, z) = (p[0], x[0]);
                Evaluation::lower(inq58_target(a, z), (a * a / z).ln_1p())
            },
            sample: inq58_sample,
        },
        InequalityCase {
            id: "INQ581",
            params: Arity::Fixed(P_A),
            point: X_Z,
            side: Side::Lower,
            target: T_INQ58,
            bound: "1 + a²(z-2)/(z-a-1)²",
            domain_text: "a > 0, z > 2, z > 2a",
            baseline: true,
            domain: |p, x| {
                require(p[0] > 0.0, "a > 0")?;
                require(x[0] > 2.0 && x[0] > 2.0 * p[0], "z > 2 and z > 2a")
            },
            eval: |p, x| {
                let (a, z) = (p[0], x[0]);
                let d = z - a - 1.0;
                Evaluation::lower(inq58_target(a, z), (a * a * (z - 2.0) / (d * d)).ln_1p())
            },
            sample: |rng| {
                let a = uniform(rng, 1e-3, 10.0);
                (vec![a], vec![(2.0 * a).max(2.0) + offset(rng, false)])
            },
        },
    ]
}
