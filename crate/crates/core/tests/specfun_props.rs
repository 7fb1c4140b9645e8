use cmgamma::specfun::{digamma, gen_binom, log_beta, log_gamma, polygamma, reflection_product};
use proptest::prelude::*;

/// Log-uniform over `[1e-2, 1e6]`.
fn wide_x() -> impl Strategy<Value = f64> {
    (-2.0f64..6.0).prop_map(|e| 10f64.powf(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn log_gamma_recurrence(x in wide_x()) {
        let next = log_gamma(x + 1.0).unwrap();
        let diff = next - log_gamma(x).unwrap() - x.ln();
        prop_assert!(diff.abs() <= 1e-12 * (1.0 + next.abs()), "x={x} diff={diff:e}");
    }

    #[test]
    fn digamma_recurrence(x in wide_x()) {
        let diff = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
        prop_assert!(diff.abs() <= 1e-12, "x={x} diff={diff:e}");
    }

    #[test]
    fn polygamma_recurrence(n in 1u32..=12, x in wide_x()) {
        let lhs = polygamma(n, x + 1.0).unwrap();
        let rhs = polygamma(n, x).unwrap();
        let factorial: f64 = (1..=n).map(f64::from).product();
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let step = sign * factorial / x.powi(n as i32 + 1);
        let diff = lhs - rhs - step;
        let scale = lhs.abs().max(rhs.abs()).max(step.abs());
        prop_assert!(diff.abs() <= 1e-10 * scale, "n={n} x={x} diff={diff:e} scale={scale:e}");
    }

    #[test]
    fn reflection_matches_log_gamma(a in 0.01f64..0.99) {
        let direct = reflection_product(a).unwrap();
        let via_lg = (log_gamma(1.0 - a).unwrap() + log_gamma(1.0 + a).unwrap()).exp();
        prop_assert!(((direct - via_lg) / direct).abs() <= 1e-12, "a={a}");
    }

    #[test]
    fn log_beta_symmetric(a in wide_x(), b in wide_x()) {
        prop_assert_eq!(log_beta(a, b).unwrap(), log_beta(b, a).unwrap());
    }

    #[test]
    fn gen_binom_zero_is_one(x in -0.99f64..1e3) {
        prop_assert!((gen_binom(x, 0.0).unwrap() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn closed_forms() {
    let pi = std::f64::consts::PI;
    assert!((polygamma(1, 1.0).unwrap() - pi * pi / 6.0).abs() <= 1e-14);
    assert!((polygamma(1, 2.0).unwrap() - (pi * pi / 6.0 - 1.0)).abs() <= 1e-14);
    assert!((polygamma(2, 1.0).unwrap() + 2.4041138063191885).abs() <= 1e-13);
    assert!(log_beta(1.0, 1.0).unwrap().abs() <= 1e-15);
    assert!((log_beta(2.0, 3.0).unwrap() - (1.0f64 / 12.0).ln()).abs() <= 1e-14);
    assert!((log_beta(0.5, 0.5).unwrap() - pi.ln()).abs() <= 1e-14);
    assert!((gen_binom(4.0, 2.0).unwrap() - 6.0).abs() <= 1e-12);
    assert!((gen_binom(2.5, 1.5).unwrap() - 2.5).abs() <= 1e-12);
    assert!((reflection_product(0.5).unwrap() - pi / 2.0).abs() <= 1e-15);
    assert!((reflection_product(0.25).unwrap() - 1.1107207345395915).abs() <= 1e-14);
    assert!((reflection_product(1e-9).unwrap() - 1.0).abs() <= 1e-15);
}

#[test]
fn domain_errors() {
    assert!(log_gamma(0.0).is_err());
    assert!(log_gamma(-1.5).is_err());
    assert!(digamma(f64::NAN).is_err());
    assert!(polygamma(0, 1.0).is_err());
    assert!(reflection_product(1.0).is_err());
    assert!(gen_binom(-1.0, 0.0).is_err());
}
