//! Hyers-Ulam stability (HUS) of the eigenvalue equation `x^Δ = λx` on the
//! discrete time scale `T_{α,β}` with two alternating step sizes.
//!
//! The crate covers four layers:
//!
//! * [`timescale`] — exact grid arithmetic: graininess, forward jump, the
//!   sign-changing exponential `e_λ(t,0)`, Δ-derivatives and Δ-sums.
//! * [`classifier`] — partition of the `(α, β, λ)` parameter space into the
//!   eleven stability cases `A..K`, with the threshold eigenvalues `λ⁺`, `λ⁻`.
//! * [`constants`] — the per-case HUS constant, the competing
//!   sup-plus-integral constant, and the `hZ` reduction identity.
//! * [`verifier`] — empirical validation: ε-perturbed trajectories, one
//!   parameter minimax fitting, and adversarial sign-pattern search that
//!   lower-bounds the minimal HUS constant.

pub mod classifier;
pub mod constants;
pub mod error;
pub mod timescale;
pub mod tol;
pub mod verifier;

pub use classifier::{classify, product_signature, thresholds, CaseLabel, CaseTag, ProductSignature, Thresholds};
pub use constants::{
    andras_constant, builtin_examples, compare_table, hz_reduction_check, theorem_constant,
    AndrasConstant, BuiltinExample, CompareRow, HusReason, HusVerdict, Winner,
};
pub use error::Error;
pub use timescale::{
    delta_derivative, delta_sum_abs_exp, delta_sum_abs_exp_direct, delta_sum_limit, exp_lambda,
    mu, sigma, GridFunction, GridPoint, Phase, StepPair,
};
pub use tol::Tolerances;
pub use verifier::{
    adversarial_lower_bound, best_fit, integrate, verify_case, AdversarialResult, Envelope,
    FitResult, Pattern, Perturbation, SearchMode, Trajectory, VerifyReport,
};
