//! Property checks on the window constructors: compact support, evenness,
//! normalization, and the exact scaling laws of the derived quantities.

use proptest::prelude::*;
use qvac_core::distribution::DistributionParams;
use qvac_core::rydberg::{prob_at_xstar_formula, v_bar, AtomModel};
use qvac_core::sampling::{make_one_scale, make_two_scale, SwitchProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn compact_support_at_a_million_random_points() {
    let profile = SwitchProfile::exp_inverse(1.0).unwrap();
    let f2 = make_two_scale(&profile, 50.0).unwrap();
    let fj = make_one_scale(&SwitchProfile::johnson(1.0, 2.0, 1.0).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1_000_000 {
        let t: f64 = rng.gen_range(-200.0..200.0);
        if t.abs() >= 25.0 {
            assert_eq!(f2.eval(t), 0.0);
        } else {
            assert!(f2.eval(t) >= 0.0);
        }
        if t.abs() >= 1.0 {
            assert_eq!(fj.eval(t), 0.0);
        }
    }
}

#[test]
fn evenness_is_bitwise() {
    let f2 = make_two_scale(&SwitchProfile::exp_inverse(1.0).unwrap(), 50.0).unwrap();
    let fj = make_one_scale(&SwitchProfile::johnson(1.0, 2.0, 0.7).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xe7e4);
    for _ in 0..10_000 {
        let t: f64 = rng.gen_range(0.0..30.0);
        assert_eq!(f2.eval(t).to_bits(), f2.eval(-t).to_bits());
        assert_eq!(fj.eval(t).to_bits(), fj.eval(-t).to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normalization_holds_for_random_shapes(
        tau in 0.2f64..5.0,
        ratio in 2.0f64..120.0,
    ) {
        let profile = SwitchProfile::exp_inverse(tau).unwrap();
        let f2 = make_two_scale(&profile, ratio * tau).unwrap();
        // midpoint Riemann sum as an implementation-independent check
        let half = 0.5 * f2.t0();
        let n = 60_000;
        let h = 2.0 * half / n as f64;
        let total: f64 = (0..n)
            .map(|k| f2.eval(-half + (k as f64 + 0.5) * h))
            .sum::<f64>() * h;
        prop_assert!((total - 1.0).abs() < 1e-6, "{}", total);
    }

    #[test]
    fn johnson_normalization_random_params(
        a in 1.3f64..4.0,
        beta in 0.3f64..2.0,
    ) {
        let fj = make_one_scale(&SwitchProfile::johnson(1.0, a, beta).unwrap()).unwrap();
        let n = 60_000;
        let h = 2.0 / n as f64;
        let total: f64 = (0..n)
            .map(|k| fj.eval(-1.0 + (k as f64 + 0.5) * h))
            .sum::<f64>() * h;
        prop_assert!((total - 1.0).abs() < 1e-6, "{}", total);
    }

    #[test]
    fn exact_power_law_scalings(
        beta in 0.25f64..2.0,
        gamma0 in 0.25f64..3.0,
    ) {
        // doubling beta: v_bar and x* drop by exactly 2^14, the crossover
        // probability by exactly 2^4; gamma0 enters squared
        let atom = AtomModel::new(40, 1.0, 1e-15, 5e-14, beta, gamma0).unwrap();
        let atom2 = AtomModel::new(40, 1.0, 1e-15, 5e-14, 2.0 * beta, gamma0).unwrap();
        prop_assert_eq!(
            v_bar(&atom).fraction_of_c,
            v_bar(&atom2).fraction_of_c * 2f64.powi(14)
        );
        let p = DistributionParams::eta_half(beta, gamma0, 1.0, 50.0, 0.1).unwrap();
        let p2 = DistributionParams::eta_half(2.0 * beta, gamma0, 1.0, 50.0, 0.1).unwrap();
        prop_assert_eq!(p.x_star, p2.x_star * 2f64.powi(14));
        prop_assert_eq!(
            prob_at_xstar_formula(beta, gamma0, 1.7),
            prob_at_xstar_formula(2.0 * beta, gamma0, 1.7) * 16.0
        );
        prop_assert_eq!(
            prob_at_xstar_formula(beta, 2.0 * gamma0, 1.7),
            prob_at_xstar_formula(beta, gamma0, 1.7) * 4.0
        );
    }
}
