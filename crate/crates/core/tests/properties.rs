use monoq_core::measures::{
    coa_two_qubit, f_alpha, renyi_entanglement_pure, renyi_entanglement_two_qubit, renyi_entropy,
    von_neumann_entropy, wootters_concurrence, ALPHA_THEOREM_MAX, ALPHA_THEOREM_MIN,
};
use monoq_core::monogamy::{ckw_check, detect_ordering, weight_ladder, Hypothesis};
use monoq_core::polygamy::{theorem3_bound, wclass_pair_coa};
use monoq_core::seed::rng_from_seed;
use monoq_core::state::{
    haar_random_state, hermitian_spectrum, partial_trace, pure_to_density, random_density_matrix,
};
use monoq_core::{AlphaMu, Spectrum, WClassState};
use proptest::prelude::*;

fn alpha_range() -> impl Strategy<Value = f64> {
    ALPHA_THEOREM_MIN..ALPHA_THEOREM_MAX
}

fn f(x: f64, alpha: f64) -> f64 {
    f_alpha(x, alpha).unwrap().get()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn schmidt_symmetry(seed in any::<u64>(), n in 2usize..=5, cut in 1usize..4) {
        let psi = haar_random_state(n, seed).unwrap();
        let cut = cut.min(n - 1);
        let left: Vec<usize> = (0..cut).collect();
        let right: Vec<usize> = (cut..n).collect();
        let a = hermitian_spectrum(&psi.reduced(&left).unwrap()).unwrap();
        let b = hermitian_spectrum(&psi.reduced(&right).unwrap()).unwrap();
        let k = a.values().len().min(b.values().len());
        for i in 0..k {
            prop_assert!((a.values()[i] - b.values()[i]).abs() < 1e-10);
        }
        for v in a.values()[k..].iter().chain(&b.values()[k..]) {
            prop_assert!(v.abs() < 1e-10);
        }
    }

    #[test]
    fn partial_trace_composes(seed in any::<u64>()) {
        let rho = pure_to_density(&haar_random_state(3, seed).unwrap());
        let direct = partial_trace(&rho, &["A"]).unwrap();
        let staged = partial_trace(&partial_trace(&rho, &["A", "B1"]).unwrap(), &["A"]).unwrap();
        prop_assert!(direct.matrix().max_abs_diff(staged.matrix()) < 1e-12);
    }

    #[test]
    fn spectrum_sums_to_trace_and_pure_has_unit_purity(seed in any::<u64>(), n in 1usize..=4) {
        let psi = haar_random_state(n, seed).unwrap();
        let rho = pure_to_density(&psi);
        prop_assert!((rho.purity() - 1.0).abs() < 1e-12);
        let mut rng = rng_from_seed(seed);
        let mixed = random_density_matrix(n, 1 << n, &mut rng).unwrap();
        let spec = hermitian_spectrum(&mixed).unwrap();
        prop_assert!((spec.sum() - mixed.matrix().trace().re).abs() < 1e-10);
    }

    #[test]
    fn f_alpha_is_monotone(alpha in alpha_range(), x in 0.0f64..1.0, dx in 0.0f64..1.0) {
        let y = (x + dx).min(1.0);
        prop_assert!(f(y, alpha) - f(x, alpha) >= -1e-12);
    }

    #[test]
    fn f_alpha_is_subadditive(alpha in alpha_range(), x in 0.0f64..1.0, t in 0.0f64..1.0) {
        let y = t * (1.0 - x * x).sqrt();
        prop_assert!(f(x * x + y * y, alpha) <= f(x * x, alpha) + f(y * y, alpha) + 1e-12);
    }

    #[test]
    fn f_alpha_of_square_is_midpoint_convex(alpha in alpha_range(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let m = 0.5 * (x + y);
        prop_assert!(f(m * m, alpha) <= 0.5 * (f(x * x, alpha) + f(y * y, alpha)) + 1e-12);
    }

    #[test]
    fn renyi_entropy_is_continuous_at_one(seed in any::<u64>()) {
        let rho = pure_to_density(&haar_random_state(3, seed).unwrap());
        let spec = hermitian_spectrum(&partial_trace(&rho, &["A", "B1"]).unwrap()).unwrap();
        let vn = von_neumann_entropy(&spec);
        for alpha in [1.0 - 1e-7, 1.0 + 1e-7] {
            prop_assert!((renyi_entropy(&spec, alpha).unwrap().get() - vn).abs() < 1e-5);
        }
    }

    #[test]
    fn coa_dominates_concurrence(seed in any::<u64>(), rank in 1usize..=4) {
        let mut rng = rng_from_seed(seed);
        let rho = random_density_matrix(2, rank, &mut rng).unwrap();
        let c = wootters_concurrence(&rho).unwrap().get();
        let ca = coa_two_qubit(&rho).unwrap().get();
        prop_assert!((0.0..=1.0 + 1e-10).contains(&c));
        prop_assert!(ca >= c - 1e-12);
    }

    #[test]
    fn analytic_two_qubit_matches_pure(seed in any::<u64>(), alpha in alpha_range()) {
        let psi = haar_random_state(2, seed).unwrap();
        let analytic = renyi_entanglement_two_qubit(&pure_to_density(&psi), alpha).unwrap().get();
        let direct = renyi_entanglement_pure(&psi, &["A"], alpha).unwrap().get();
        prop_assert!((analytic - direct).abs() < 1e-10);
    }

    #[test]
    fn ckw_holds(seed in any::<u64>(), n in 3usize..=5) {
        let r = ckw_check(&haar_random_state(n, seed).unwrap()).unwrap();
        prop_assert!(r.margin >= -1e-10);
    }

    #[test]
    fn wclass_marginals_have_equal_concurrence_and_coa(seed in any::<u64>(), n in 3usize..=5) {
        let mut rng = rng_from_seed(seed);
        let w = WClassState::random(n, &mut rng).unwrap();
        let psi = w.to_state_vector();
        for i in 0..n - 1 {
            let rho = psi.reduced(&[0, i + 1]).unwrap();
            let expected = wclass_pair_coa(&w, i).unwrap().get();
            prop_assert!((wootters_concurrence(&rho).unwrap().get() - expected).abs() < 1e-10);
            prop_assert!((coa_two_qubit(&rho).unwrap().get() - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn polygamy_bound_holds_and_is_tighter(
        seed in any::<u64>(),
        n in 3usize..=5,
        mu in 0.01f64..=1.0,
        alpha in prop::sample::select(vec![0.8229, ALPHA_THEOREM_MAX - 1e-4]),
    ) {
        let mut rng = rng_from_seed(seed);
        let w = WClassState::random(n, &mut rng).unwrap();
        let profile = detect_ordering(&w.to_state_vector(), "A").unwrap();
        prop_assume!(profile.is_satisfied());
        let r = theorem3_bound(&w, &profile, AlphaMu::new(alpha, mu).unwrap()).unwrap();
        prop_assert!(r.margin >= -1e-9);
        prop_assert!(r.rhs <= r.baseline_rhs + 1e-12);
        prop_assert!(r.weights().iter().all(|&x| x <= 1.0));
    }

    #[test]
    fn monogamy_ladder_weights_are_at_least_one(n in 3usize..=8, mu in 2.0f64..10.0, m in 1usize..6) {
        let full = weight_ladder(n, Hypothesis::Full, mu).unwrap();
        prop_assert!(full.iter().all(|&x| x >= 1.0));
        if m < n - 2 {
            let split = weight_ladder(n, Hypothesis::Split(m), mu).unwrap();
            prop_assert!(split.iter().all(|&x| x >= 1.0));
        }
    }
}

#[test]
fn f_alpha_grid_properties() {
    for k in 0..=8 {
        let alpha = ALPHA_THEOREM_MIN + (ALPHA_THEOREM_MAX - ALPHA_THEOREM_MIN) * k as f64 / 8.0;
        let grid: Vec<f64> = (0..=1000).map(|i| f(i as f64 / 1000.0, alpha)).collect();
        assert!(grid.windows(2).all(|w| w[1] - w[0] >= -1e-12));
        let sq: Vec<f64> = (0..=1000)
            .map(|i| {
                let x = i as f64 / 1000.0;
                f(x * x, alpha)
            })
            .collect();
        assert!(sq.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] >= -1e-9));
        assert!(f(0.0, alpha).abs() < 1e-15 && (f(1.0, alpha) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn haar_mean_marginal_purity() {
    // For a 1-qubit marginal of n Haar qubits, E[tr ρ²] = (2 + 2^{n-1}) / (2^n + 1).
    let samples = 10_000u64;
    let mean = (0..samples)
        .map(|s| partial_trace(&pure_to_density(&haar_random_state(3, s).unwrap()), &["A"]).unwrap().purity())
        .sum::<f64>()
        / samples as f64;
    let expected = 6.0 / 9.0;
    assert!((mean - expected).abs() / expected < 0.01, "mean purity {mean}");
}

#[test]
fn haar_sampling_is_seed_deterministic() {
    assert_eq!(haar_random_state(4, 77).unwrap(), haar_random_state(4, 77).unwrap());
    assert_ne!(haar_random_state(4, 77).unwrap(), haar_random_state(4, 78).unwrap());
}

#[test]
fn spectrum_rejects_out_of_range_values() {
    assert!(Spectrum::new(vec![1.0 + 1e-9, 0.0]).is_err());
    assert!(Spectrum::new(vec![0.7, 0.2]).is_err());
    assert!(Spectrum::new(vec![1.0 + 1e-11, -1e-11]).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unweighted_monogamy_sum_holds(seed in any::<u64>(), mu in 2.0f64..6.0, alpha in alpha_range()) {
        use monoq_core::monogamy::theorem_bound;
        let psi = haar_random_state(3, seed).unwrap();
        let p = detect_ordering(&psi, "A").unwrap();
        let r = theorem_bound(&psi, &p, AlphaMu::new(alpha, mu).unwrap()).unwrap();
        prop_assert!(r.lhs >= r.baseline_rhs - 1e-10);
    }
}
