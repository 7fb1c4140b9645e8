use cmgamma::certify::check_weak_submajorization;
use cmgamma::kernels::{kernel_value, log_deriv_polygamma, log_deriv_quadrature, log_f, RatioFamily};
use cmgamma::quad::QuadOptions;
use proptest::prelude::*;

fn fixtures() -> Vec<RatioFamily> {
    vec![
        RatioFamily::TwoParam { a: 0.5, b: 0.7 },
        RatioFamily::TwoParam { a: 2.0, b: 3.5 },
        RatioFamily::MultiParam { a: vec![1.0, 2.0, 3.0] },
        RatioFamily::MultiParam { a: vec![0.25, 0.25] },
        RatioFamily::Majorized { a: vec![3.0, 1.0], b: vec![2.0, 2.0] },
        RatioFamily::Majorized { a: vec![6.0, 0.0, 0.0], b: vec![2.0, 2.0, 2.0] },
        RatioFamily::Symmetric { a: 0.5 },
        RatioFamily::Symmetric { a: 4.0 },
    ]
}

fn grid20(fam: &RatioFamily) -> Vec<f64> {
    let lb = fam.domain_lower_bound();
    (0..20).map(|i| lb + 0.05 * 400f64.powf(f64::from(i) / 19.0)).collect()
}

fn t_grid() -> Vec<f64> {
    (0..200).map(|i| 1e-6 * (50.0f64 / 1e-6).powf(f64::from(i) / 199.0)).collect()
}

#[test]
fn dual_path_agreement_and_sign() {
    let opts = QuadOptions::default();
    for fam in fixtures() {
        for z in grid20(&fam) {
            for n in 1..=6 {
                let q = log_deriv_quadrature(&fam, z, n, &opts).unwrap().signed_value;
                let p = log_deriv_polygamma(&fam, z, n).unwrap().signed_value;
                assert!((q - p).abs() <= (1e-8 * p.abs()).max(1e-9), "{fam:?} z={z} n={n}: {q} vs {p}");
                assert!(q >= -1e-9 && p >= -1e-9, "{fam:?} z={z} n={n}: {q} {p}");
            }
        }
    }
}

#[test]
fn kernels_nonnegative_for_valid_families() {
    for fam in fixtures() {
        for t in t_grid() {
            let k = kernel_value(&fam, t).unwrap();
            assert!(k >= 0.0, "{fam:?} t={t}: {k}");
        }
    }
}

#[test]
fn two_param_symmetry() {
    let (f, g) = (RatioFamily::TwoParam { a: 0.3, b: 1.9 }, RatioFamily::TwoParam { a: 1.9, b: 0.3 });
    let opts = QuadOptions::default();
    for z in grid20(&f) {
        assert!((log_f(&f, z).unwrap() - log_f(&g, z).unwrap()).abs() <= 1e-12);
        for n in 1..=4 {
            let (qf, qg) = (log_deriv_quadrature(&f, z, n, &opts).unwrap(), log_deriv_quadrature(&g, z, n, &opts).unwrap());
            let (pf, pg) = (log_deriv_polygamma(&f, z, n).unwrap(), log_deriv_polygamma(&g, z, n).unwrap());
            let scale = 1.0 + pf.signed_value.abs();
            assert!((qf.signed_value - qg.signed_value).abs() <= 1e-12 * scale, "z={z} n={n}");
            assert!((pf.signed_value - pg.signed_value).abs() <= 1e-12 * scale, "z={z} n={n}");
        }
    }
}

#[test]
fn log_f_decreasing() {
    for fam in fixtures() {
        let grid = grid20(&fam);
        for w in grid.windows(2) {
            assert!(log_f(&fam, w[0]).unwrap() >= log_f(&fam, w[1]).unwrap() - 1e-10, "{fam:?} {w:?}");
        }
    }
}

fn list(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..10.0, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Whenever the majorization check passes the kernel is nonnegative.
    #[test]
    fn majorized_kernel_sign_tracks_check((a, b) in (1usize..=4).prop_flat_map(|n| (list(n), list(n)))) {
        let fam = RatioFamily::Majorized { a: a.clone(), b: b.clone() };
        let min = t_grid().into_iter().map(|t| fam.kernel_scaled(t)).fold(f64::INFINITY, f64::min);
        if check_weak_submajorization(&a, &b).unwrap() {
            prop_assert!(min >= -1e-12, "{a:?} {b:?}: {min}");
        }
    }
}

#[test]
fn rejects_outside_domain() {
    let fam = RatioFamily::TwoParam { a: 1.0, b: 1.0 };
    assert!(log_f(&fam, 1.0).is_err());
    assert!(log_deriv_polygamma(&fam, 0.5, 1).is_err());
    assert!(log_deriv_quadrature(&fam, 2.0, 0, &QuadOptions::default()).is_err());
    assert!(RatioFamily::TwoParam { a: -1.0, b: 0.0 }.validate().is_err());
}
