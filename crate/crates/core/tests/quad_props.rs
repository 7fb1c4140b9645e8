use cmgamma::quad::{integrate_half_line, QuadOptions};
use cmgamma::specfun::{digamma, EULER_GAMMA};

type Integrand = Box<dyn Fn(f64) -> f64>;

fn basket() -> Vec<(Integrand, f64)> {
    vec![
        (Box::new(|t: f64| (-t).exp()), 1.0),
        (Box::new(|t: f64| t * t * (-0.5 * t).exp()), 0.5),
        (Box::new(|t: f64| (-t).exp() * (3.0 * t).cos()), 1.0),
        (Box::new(|t: f64| -(-t).exp_m1() / t * (-2.0 * t).exp()), 2.0),
    ]
}

#[test]
fn linearity() {
    let opts = QuadOptions::default();
    let b = basket();
    for (i, (f, df)) in b.iter().enumerate() {
        for (g, dg) in &b[i + 1..] {
            let (alpha, beta) = (1.7, -0.4);
            let decay = df.min(*dg);
            let rf = integrate_half_line(f, *df, &opts).unwrap();
            let rg = integrate_half_line(g, *dg, &opts).unwrap();
            let rc = integrate_half_line(|t| alpha * f(t) + beta * g(t), decay, &opts).unwrap();
            let want = alpha * rf.value + beta * rg.value;
            let err = rc.err_estimate + alpha.abs() * rf.err_estimate + beta.abs() * rg.err_estimate;
            assert!((rc.value - want).abs() <= err.max(1e-15), "{} vs {want} (err {err:e})", rc.value);
        }
    }
}

#[test]
fn digamma_representation() {
    for z in [0.5, 1.0, 2.0, 7.3] {
        let f = move |t: f64| (-t).exp() * -(-(z - 1.0) * t).exp_m1() / -(-t).exp_m1();
        let r = integrate_half_line(f, f64::min(1.0, z), &QuadOptions::default()).unwrap();
        let psi = -EULER_GAMMA + r.value;
        assert!((psi - digamma(z).unwrap()).abs() <= 1e-9, "z={z}: {psi}");
    }
}

#[test]
fn split_point_independence() {
    for (f, decay) in basket() {
        let base = integrate_half_line(&f, decay, &QuadOptions::default()).unwrap();
        for split in [0.5, 0.75, 1.5, 2.0] {
            let opts = QuadOptions { split_point: split, ..QuadOptions::default() };
            let r = integrate_half_line(&f, decay, &opts).unwrap();
            let tol = 10.0 * (r.err_estimate + base.err_estimate);
            assert!((r.value - base.value).abs() <= tol.max(1e-15), "split {split}: {} vs {}", r.value, base.value);
        }
    }
}
