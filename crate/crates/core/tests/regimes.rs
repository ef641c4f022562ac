mod common;

use common::{double_hump, fig2, storage};
use eitprop::physics::ProbeEnvelope;
use eitprop::regimes::{classify, fidelity, report, storage_fidelity, Verdict};
use eitprop::solver::solve_full;
use proptest::prelude::*;

#[test]
fn constant_coupling_example_is_classified() {
    let s = fig2(4096);
    let near = classify(&s, 4.0).unwrap();
    assert!((near.gamma1m_t - 40.0).abs() < 0.8, "{}", near.gamma1m_t);
    assert!((near.gamma_t - 100.0).abs() < 2.0);
    assert_eq!(near.conditions.upper_level_adiabatic.verdict, Verdict::Satisfied);
    assert_eq!(near.conditions.eit_width.verdict, Verdict::Satisfied);
    assert_eq!(near.conditions.polariton.verdict, Verdict::Marginal);
    assert_eq!(near.conditions.blurring.verdict, Verdict::Violated);

    let deep = classify(&s, 400.0).unwrap();
    assert_eq!(deep.conditions.polariton.verdict, Verdict::Violated);
    assert_eq!(deep.conditions.fitting.verdict, Verdict::Satisfied);
}

#[test]
fn storage_width_sets_the_storage_margin() {
    let wide = classify(&storage(1.0), 800.0).unwrap();
    let narrow = classify(&storage(0.1f64.sqrt()), 100.0).unwrap();
    assert!((wide.gamma1m_t / narrow.gamma1m_t - 10.0).abs() < 1e-6);
    assert!(wide.storage_margin > 5.0);
    assert!(narrow.storage_margin < 1.0);
}

#[test]
fn retrieval_is_faithful_only_with_a_wide_window() {
    let window = 2500.0;
    let fid = |scale: f64, z: f64| {
        let s = storage(scale);
        let f = solve_full(&s, &[z]).unwrap();
        storage_fidelity(&f, z, &ProbeEnvelope::field(double_hump()), &s.coupling, window).unwrap()
    };
    let good = fid(1.0, 800.0);
    let leaky = fid(1.0, 100.0);
    let narrow = fid(0.1f64.sqrt(), 100.0);
    assert!(good > 0.95, "{good}");
    assert!(leaky < 0.2, "{leaky}");
    assert!(narrow < good - 0.05, "{narrow} vs {good}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polariton_and_blurring_exclude_each_other(z in 0.01f64..1e4, g1t in 0.1f64..1e3) {
        let r = report(z, 100.0, 100.0, g1t);
        let p = r.conditions.polariton.margin;
        let b = r.conditions.blurring.margin;
        prop_assert!((p * b - 1.0).abs() < 1e-12);
        prop_assert!(!(p > 1.0 && b > 1.0));
    }

    #[test]
    fn polariton_ratio_falls_with_depth(z in 0.01f64..1e4, dz in 0.01f64..1e3, g1t in 0.1f64..1e3) {
        let a = report(z, 100.0, 100.0, g1t);
        let b = report(z + dz, 100.0, 100.0, g1t);
        prop_assert!(b.ratio_polariton < a.ratio_polariton);
        prop_assert!(b.fitting_ratio > a.fitting_ratio);
    }

    #[test]
    fn fidelity_ignores_scale_and_delay(scale in 0.01f64..100.0, shift in 0usize..80, width in 5.0f64..20.0) {
        let n = 300;
        let g: Vec<f64> = (0..n)
            .map(|i| {
                let x = i as f64;
                (-((x - 80.0) / width).powi(2)).exp() + 0.6 * (-((x - 80.0 - 2.5 * width) / width).powi(2)).exp()
            })
            .collect();
        let mut moved = vec![0.0; n];
        for i in shift..n {
            moved[i] = scale * g[i - shift];
        }
        let f = fidelity(&moved, &g);
        prop_assert!((f - 1.0).abs() < 1e-9, "{}", f);
        prop_assert!((fidelity(&g, &moved) - f).abs() < 1e-12);
    }
}
