//! Shared helpers for the integration suites.

use hus_core::{exp_lambda, GridPoint, StepPair, Trajectory};

/// The eight reference parameter points `(α, β, λ)`.
pub const EXAMPLE_POINTS: [(f64, f64, f64); 8] = [
    (6.0, 1.0, -0.2),
    (6.0, 1.0, -0.8),
    (3.0, 1.0, -0.5),
    (3.0, 1.0, -0.8),
    (0.1, 1.0, -1.2),
    (0.1, 1.0, -9.2),
    (1.0, 0.5, -2.5),
    (1.0, 0.5, -2.9),
];

pub fn steps(a: f64, b: f64) -> StepPair {
    StepPair::new(a, b).unwrap()
}

/// Exact minimax optimum of `g(c) = max_n |phi_n - c e_n|` by enumerating
/// all crossing points of the piecewise-linear envelope: candidates are the
/// pairwise intersections `(phi_i - phi_j)/(e_i - e_j)` and
/// `(phi_i + phi_j)/(e_i + e_j)` plus the per-point exact fits `phi_i/e_i`.
/// O(n^2), independent of the search used by the implementation.
pub fn exact_minimax_oracle(phi: &[f64], e: &[f64]) -> (f64, f64) {
    assert_eq!(phi.len(), e.len());
    let g = |c: f64| -> f64 {
        phi.iter()
            .zip(e)
            .map(|(&p, &ev)| (p - c * ev).abs())
            .fold(0.0, f64::max)
    };
    let mut candidates: Vec<f64> = phi.iter().zip(e).map(|(&p, &ev)| p / ev).collect();
    for i in 0..phi.len() {
        for j in (i + 1)..phi.len() {
            let diff = e[i] - e[j];
            if diff.abs() > 1e-300 {
                candidates.push((phi[i] - phi[j]) / diff);
            }
            let sum = e[i] + e[j];
            if sum.abs() > 1e-300 {
                candidates.push((phi[i] + phi[j]) / sum);
            }
        }
    }
    let mut best = (candidates[0], g(candidates[0]));
    for &c in &candidates[1..] {
        let v = g(c);
        if v < best.1 {
            best = (c, v);
        }
    }
    best
}

/// Sample `e_λ` on the first `n` grid points.
pub fn exp_samples(s: &StepPair, lambda: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| exp_lambda(s, lambda, GridPoint::from_index(i)).unwrap())
        .collect()
}

/// Oracle deviation of a trajectory, via the pairwise-intersection search.
pub fn oracle_fit(traj: &Trajectory) -> (f64, f64) {
    let e = exp_samples(&traj.steps, traj.lambda, traj.phi.len());
    exact_minimax_oracle(traj.phi.values(), &e)
}
