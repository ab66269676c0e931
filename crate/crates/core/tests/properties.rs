//! Property and randomized-consistency suites for the grid calculus, the
//! case partition, the constants, and the verifier.

mod common;

use common::{exact_minimax_oracle, exp_samples, oracle_fit, steps, EXAMPLE_POINTS};
use hus_core::{
    adversarial_lower_bound, best_fit, classify, delta_sum_abs_exp, delta_sum_abs_exp_direct,
    delta_sum_limit, exp_lambda, integrate, mu, product_signature, sigma, theorem_constant,
    thresholds, CaseTag, GridPoint, Pattern, Perturbation, Phase, ProductSignature, SearchMode,
    StepPair,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn regressive(s: &StepPair, lambda: f64) -> bool {
    (lambda + 1.0 / s.alpha()).abs() > 1e-3 && (lambda + 1.0 / s.beta()).abs() > 1e-3
}

fn step_pair_strategy() -> impl Strategy<Value = StepPair> {
    ((0.05f64..8.0), (0.05f64..8.0))
        .prop_filter("distinct steps", |(a, b)| (a - b).abs() > 1e-3)
        .prop_map(|(a, b)| StepPair::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn recurrence_identity_holds_everywhere(
        s in step_pair_strategy(),
        lambda in -12.0f64..3.0,
        idx in 0usize..40,
    ) {
        prop_assume!(regressive(&s, lambda));
        let p = GridPoint::from_index(idx);
        let here = exp_lambda(&s, lambda, p).unwrap();
        let next = exp_lambda(&s, lambda, sigma(p)).unwrap();
        let predicted = (1.0 + lambda * mu(&s, p)) * here;
        prop_assert!((next - predicted).abs() <= 1e-12 * next.abs().max(1e-300));
    }

    #[test]
    fn even_sign_alternates_for_negative_products(
        s in step_pair_strategy(),
        u in 0.02f64..0.98,
        k in 0u32..16,
    ) {
        // Place λ strictly inside the opposite-sign interval, so the
        // product (1+λα)(1+λβ) is negative.
        let lo = -1.0 / s.alpha().min(s.beta());
        let hi = -1.0 / s.alpha().max(s.beta());
        let lambda = lo + u * (hi - lo);
        prop_assume!(s.product(lambda) < -1e-9);
        let e = exp_lambda(&s, lambda, GridPoint::new(k, Phase::Even)).unwrap();
        let expected = if k % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(e.signum(), expected);
    }

    #[test]
    fn closed_form_matches_direct_summation(
        s in step_pair_strategy(),
        lambda in -12.0f64..3.0,
        k in 0u32..20,
    ) {
        prop_assume!(regressive(&s, lambda));
        // Keep the powers representable.
        prop_assume!(s.product(lambda).abs() < 1e6);
        for phase in [Phase::Even, Phase::Odd] {
            let end = GridPoint::new(k, phase);
            let closed = delta_sum_abs_exp(&s, lambda, end).unwrap();
            let direct = delta_sum_abs_exp_direct(&s, lambda, end).unwrap();
            prop_assert!(
                (closed - direct).abs() <= 1e-12 * closed.abs().max(1.0),
                "k={} {:?}: closed {} direct {}", k, phase, closed, direct
            );
        }
    }

    #[test]
    fn threshold_eigenvalues_solve_their_quadratic(s in step_pair_strategy()) {
        let th = thresholds(&s, 0.0);
        if let (Some(lp), Some(lm)) = (th.lambda_plus, th.lambda_minus) {
            prop_assert!(lm <= lp);
            let (a, b) = (s.alpha(), s.beta());
            for l in [lp, lm] {
                let residual = a * b * l * l + (a + b) * l + 2.0;
                prop_assert!(residual.abs() <= 1e-10 * (a * b * l * l).abs().max(1.0));
                prop_assert!((s.product(l) + 1.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn perturbed_dynamics_residual_is_bounded(
        s in step_pair_strategy(),
        u in -2.0f64..2.0,
        seed in 0u64..1_000,
        epsilon in 0.01f64..4.0,
    ) {
        // Scale λ by the larger step so the per-step growth factor stays
        // in [-1, 3] and cancellation in the reconstructed residual stays
        // far below the asserted slack.
        let lambda = u / s.alpha().max(s.beta());
        prop_assume!(regressive(&s, lambda));
        let pert = Perturbation::new(epsilon, Pattern::Random { seed }).unwrap();
        let traj = integrate(&s, lambda, 1.0, &pert, 12).unwrap();
        for i in 0..traj.phi.len() - 1 {
            let p = GridPoint::from_index(i);
            let step = mu(&s, p);
            let (lo, hi) = (traj.phi.values()[i], traj.phi.values()[i + 1]);
            let derivative = (hi - lo) / step;
            let residual = derivative - lambda * lo;
            // Float slack scales with the trajectory magnitude.
            let slack = 1e-12 + 1e-13 * (lo.abs() + hi.abs()) * (1.0 / step + lambda.abs());
            prop_assert!(residual.abs() <= epsilon + slack);
            prop_assert!((residual - traj.q[i]).abs() <= slack + 1e-9 * traj.q[i].abs().max(1.0));
        }
    }
}

#[test]
fn finite_sums_converge_geometrically_to_the_limit() {
    for (a, b, lambda) in EXAMPLE_POINTS {
        let s = steps(a, b);
        let rate = s.product(lambda).abs();
        assert!(rate < 1.0);
        for phase in [Phase::Even, Phase::Odd] {
            let limit = delta_sum_limit(&s, lambda, phase).unwrap();
            let floor = 1e-12 * (limit + 1.0);
            let mut prev_gap = f64::INFINITY;
            for k in 1..30u32 {
                let partial = delta_sum_abs_exp(&s, lambda, GridPoint::new(k, phase)).unwrap();
                let gap = limit - partial;
                assert!(gap >= -floor, "partial sums stay below the limit");
                if prev_gap > floor {
                    assert!(gap <= prev_gap, "monotone convergence in k");
                }
                // Gap shrinks like rate^k, with headroom for rounding.
                assert!(gap <= rate.powi(k as i32) * (limit + 1.0) * 1.01 + floor);
                prev_gap = gap;
            }
        }
    }
}

fn random_sample(rng: &mut ChaCha8Rng) -> (StepPair, f64) {
    loop {
        let a: f64 = rng.gen_range(0.05..8.0);
        let b: f64 = rng.gen_range(0.05..8.0);
        if (a - b).abs() < 1e-6 {
            continue;
        }
        let lambda: f64 = rng.gen_range(-12.0..3.0);
        return (StepPair::new(a, b).unwrap(), lambda);
    }
}

#[test]
fn classification_agrees_with_the_product_signature() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..10_000 {
        let (s, lambda) = random_sample(&mut rng);
        let label = classify(&s, lambda).unwrap();
        let sig = product_signature(&s, lambda);
        let expected: &[ProductSignature] = match label.tag {
            CaseTag::A | CaseTag::C | CaseTag::D | CaseTag::F => &[ProductSignature::InUnitNeg],
            CaseTag::B | CaseTag::E => &[ProductSignature::BeyondUnitNeg],
            CaseTag::G => &[ProductSignature::InUnitPos],
            CaseTag::H => &[ProductSignature::BeyondUnitPos],
            CaseTag::I => &[ProductSignature::PosRegressive],
            CaseTag::J => &[ProductSignature::OnUnit],
            CaseTag::K => &[ProductSignature::Zero],
        };
        assert!(
            expected.contains(&sig),
            "(α={}, β={}, λ={}): case {} vs signature {:?}",
            s.alpha(),
            s.beta(),
            lambda,
            label.tag,
            sig
        );
    }
}

#[test]
fn constants_are_positive_whenever_present() {
    let mut rng = ChaCha8Rng::seed_from_u64(7_777);
    let mut seen = 0;
    for _ in 0..10_000 {
        let (s, lambda) = random_sample(&mut rng);
        let verdict = theorem_constant(&s, lambda).unwrap();
        if let Some(k) = verdict.constant {
            assert!(k > 0.0, "(α={}, β={}, λ={})", s.alpha(), s.beta(), lambda);
            seen += 1;
        } else {
            assert!(!verdict.case.tag.has_constant());
        }
    }
    assert!(seen > 5_000, "sampling should hit constant-bearing cases often");
}

#[test]
fn quadratic_denominator_equals_the_root_product() {
    // (λ-λ⁻)(λ-λ⁺) = (2 + αλ + βλ + αβλ²)/(αβ) whenever λ± are real.
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    while checked < 500 {
        let (s, lambda) = random_sample(&mut rng);
        let th = thresholds(&s, lambda);
        let (Some(lp), Some(lm)) = (th.lambda_plus, th.lambda_minus) else {
            continue;
        };
        let roots = (lambda - lp) * (lambda - lm);
        let (a, b) = (s.alpha(), s.beta());
        let poly = (2.0 + a * lambda + b * lambda + a * b * lambda * lambda) / (a * b);
        assert!(
            (roots - poly).abs() <= 1e-10 * poly.abs().max(1.0),
            "(α={a}, β={b}, λ={lambda}): {roots} vs {poly}"
        );
        checked += 1;
    }
}

#[test]
fn gh_constant_is_symmetric_under_step_swap() {
    let mut rng = ChaCha8Rng::seed_from_u64(4_242);
    let mut checked = 0;
    while checked < 500 {
        let (s, lambda) = random_sample(&mut rng);
        let verdict = theorem_constant(&s, lambda).unwrap();
        if !matches!(verdict.case.tag, CaseTag::G | CaseTag::H) {
            continue;
        }
        let swapped = StepPair::new(s.beta(), s.alpha()).unwrap();
        let mirror = theorem_constant(&swapped, lambda).unwrap();
        assert_eq!(mirror.case.tag, verdict.case.tag);
        let (k1, k2) = (verdict.constant.unwrap(), mirror.constant.unwrap());
        assert!((k1 - k2).abs() <= 1e-12 * k1.max(1.0));
        checked += 1;
    }
}

#[test]
fn best_fit_matches_the_exact_envelope_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for trial in 0..200 {
        let (a, b, lambda) = EXAMPLE_POINTS[trial % EXAMPLE_POINTS.len()];
        let s = steps(a, b);
        let n = rng.gen_range(3..=12);
        let pert = Perturbation::new(1.0, Pattern::Random { seed: rng.gen() }).unwrap();
        let traj = integrate(&s, lambda, rng.gen_range(-2.0..2.0), &pert, n).unwrap();
        let fit = best_fit(&traj).unwrap();
        let (_, oracle_dev) = oracle_fit(&traj);
        assert!(
            (fit.deviation - oracle_dev).abs() <= 1e-9,
            "trial {trial}: fit {} vs oracle {}",
            fit.deviation,
            oracle_dev
        );
    }
}

#[test]
fn oracle_agrees_on_a_tiny_handmade_instance() {
    // Minimize max(|3 - c|, |1 - 2c|): optimum at the crossing c = 4/3.
    let (c, dev) = exact_minimax_oracle(&[3.0, 1.0], &[1.0, 2.0]);
    assert!((c - 4.0 / 3.0).abs() < 1e-12);
    assert!((dev - 5.0 / 3.0).abs() < 1e-12);
}

#[test]
fn brute_force_ratio_is_monotone_in_the_horizon() {
    for (a, b, lambda) in [(6.0, 1.0, -0.2), (1.0, 0.5, -2.5)] {
        let s = steps(a, b);
        let mut prev = 0.0;
        for n in [4usize, 6, 8, 10, 12] {
            let found = adversarial_lower_bound(&s, lambda, n, SearchMode::BruteForce).unwrap();
            assert!(
                found.ratio >= prev - 1e-12,
                "ratio dropped from {prev} to {} at n={n}",
                found.ratio
            );
            prev = found.ratio;
        }
    }
}

#[test]
fn brute_force_dominates_both_heuristics_at_the_reference_points() {
    for (a, b, lambda) in EXAMPLE_POINTS {
        let s = steps(a, b);
        let bf = adversarial_lower_bound(&s, lambda, 9, SearchMode::BruteForce).unwrap();
        let greedy = adversarial_lower_bound(&s, lambda, 9, SearchMode::Greedy).unwrap();
        let alt = adversarial_lower_bound(&s, lambda, 9, SearchMode::AlternatingBest).unwrap();
        assert!(bf.ratio >= greedy.ratio - 1e-9);
        assert!(bf.ratio >= alt.ratio - 1e-9);
    }
}

#[test]
fn exp_samples_helper_matches_the_recurrence() {
    let s = steps(6.0, 1.0);
    let e = exp_samples(&s, -0.2, 10);
    for i in 0..9 {
        let p = GridPoint::from_index(i);
        let predicted = (1.0 + -0.2 * mu(&s, p)) * e[i];
        assert!((e[i + 1] - predicted).abs() <= 1e-12 * e[i + 1].abs().max(1.0));
    }
}
