use cellsir::analytic::*;
use cellsir::specialfn::sincd;
use cellsir::FadingModel;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ps_ppp_is_a_decreasing_probability(delta in 0.05_f64..0.95, t in 1e-4_f64..1e4, k in 1.001_f64..3.0) {
        let a = ps_ppp_rayleigh(t, delta).unwrap();
        let b = ps_ppp_rayleigh(t * k, delta).unwrap();
        prop_assert!(a > 0.0 && a <= 1.0);
        prop_assert!(b < a);
    }

    #[test]
    fn ps_ppp_above_misr_and_jensen_bounds(delta in 0.05_f64..0.95, t in 0.0_f64..10.0) {
        let misr = misr_ppp(2.0 / delta).unwrap();
        let p = ps_ppp_rayleigh(t, delta).unwrap();
        prop_assert!(p >= 1.0 - t * misr - 1e-12);
        prop_assert!(p >= (-t * misr).exp() - 1e-12);
    }

    #[test]
    fn g_infty_forms_agree(delta in 0.05_f64..0.95, efir in 0.01_f64..10.0) {
        let a = g_infty(efir, delta).unwrap();
        let b = (efir.powf(delta) / sincd(delta).unwrap()).powf(1.0 / delta);
        prop_assert!((a - b).abs() <= 1e-12 * b);
    }
}

#[test]
fn small_theta_gap_to_misr_line() {
    for &d in &[0.3, 0.5, 0.7] {
        let t = 1e-3_f64;
        let p = ps_ppp_rayleigh(t, d).unwrap();
        let line = 1.0 - t * misr_ppp(2.0 / d).unwrap();
        assert!(((1.0 - line) - (1.0 - p)).abs() / (1.0 - p) < 1e-2);
    }
}

#[test]
fn tail_limit_is_sinc() {
    for &d in &[0.3_f64, 0.5, 0.7] {
        let t = 1e4_f64;
        let v = t.powf(d) * ps_ppp_rayleigh(t, d).unwrap();
        assert!((v / sincd(d).unwrap() - 1.0).abs() < 0.01, "δ={d}: {v}");
    }
}

#[test]
fn generalized_misr_respects_lower_bound() {
    let r = FadingModel::Rayleigh;
    for n in 2..=10 {
        for i in 1..=9 {
            let d = i as f64 / 10.0;
            let exact = gen_misr_ppp(n, d, r).unwrap();
            let lower = gen_misr_bounds(n, d, r).unwrap().lower;
            assert!(exact >= lower * (1.0 - 1e-12), "n={n} δ={d}");
        }
    }
}

#[test]
fn generalized_misr_decreases_with_nakagami_m() {
    for n in 1..=6 {
        for &d in &[0.3, 0.5, 0.7] {
            let mut prev = f64::INFINITY;
            for m in 1..=6 {
                let v = gen_misr_ppp(n, d, FadingModel::nakagami(m).unwrap()).unwrap();
                assert!(v <= prev * (1.0 + 1e-12), "n={n} δ={d} m={m}");
                prev = v;
            }
        }
    }
}

#[test]
fn single_and_double_precision_agree() {
    let a = ps_ppp_rayleigh(3.0_f32, 0.4).unwrap() as f64;
    let b = ps_ppp_rayleigh(3.0_f64, 0.4).unwrap();
    assert!((a - b).abs() < 1e-5);
    let a: cellsir::EfirResultF32 = efir_ppp(0.5_f32).unwrap();
    let b: cellsir::EfirResult = efir_ppp(0.5_f64).unwrap();
    assert!((a.value as f64 - b.value).abs() < 1e-6);
    let l32 = lattice_efir_bounds(0.5_f32).unwrap().value as f64;
    assert!((l32 - lattice_efir_bounds(0.5_f64).unwrap().value).abs() < 1e-4);
}
