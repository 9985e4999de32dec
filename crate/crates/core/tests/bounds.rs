mod common;

use proptest::prelude::*;
use spectral_sens_core::bounds::{bounds_report, usc2_predictor};
use spectral_sens_core::oracle::stability_envelope;

use common::connected_graph;

proptest! {
    #[test]
    fn usc2_predictor_increases_with_lambda2(
        a in 0.01..10.0f64,
        gap in 0.01..10.0f64,
        lambda3 in 0.5..20.0f64,
        delta in 1usize..50,
        n in 2usize..200,
    ) {
        let low = usc2_predictor(a, lambda3, delta, n);
        let high = usc2_predictor(a + gap, lambda3, delta, n);
        prop_assert!(low < high);
    }

    #[test]
    fn report_is_consistent_with_its_spectrum(g in connected_graph(4, 16), k in 2usize..4) {
        let b = bounds_report(&g, k, 1.0).unwrap();
        let s = b.spectrum;
        prop_assert!(s.lambda2 <= s.lambda3 && s.nu2 <= s.nu3);
        prop_assert!(s.nu_k <= s.nu_k_plus_1);
        prop_assert!(b.cut_ratio_cheeger.lower <= b.cut_ratio_cheeger.upper);
        prop_assert!(b.conductance_cheeger.lower <= b.conductance_cheeger.upper);
        prop_assert_eq!(b.higher_order_lower, s.nu_k / 2.0);
    }

    #[test]
    fn near_optimal_cuts_include_the_optimum(g in connected_graph(3, 10), rho in 1.0..3.0f64) {
        let env = stability_envelope(&g, rho).unwrap();
        prop_assert!(env.optimal_count >= 1);
        prop_assert!(env.approximate_count >= env.optimal_count);
        prop_assert!((0.0..=1.0).contains(&env.max_epsilon));
    }
}
