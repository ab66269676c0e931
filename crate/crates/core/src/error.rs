use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Step sizes violate the `α, β > 0` (and in strict mode `α ≠ β`) rules.
    #[error("invalid step pair: {0}")]
    InvalidSteps(String),
    /// `λ` hits `-1/α` or `-1/β`, so `1 + λμ(t) = 0` somewhere and `e_λ` does
    /// not exist.
    #[error("lambda = {lambda} is not regressive on this time scale")]
    NonRegressive { lambda: f64 },
    /// A Δ-sum limit was requested with `|(1+λα)(1+λβ)| ≥ 1`.
    #[error("delta-sum does not converge: |(1+λα)(1+λβ)| = {abs_product} ≥ 1")]
    NotConvergent { abs_product: f64 },
    /// Grid index outside the sampled range of a grid function.
    #[error("grid point index {index} out of range (len {len})")]
    OutOfRange { index: usize, len: usize },
    /// The sup-plus-integral constant needs `|(1+λα)(1+λβ)| < 1`.
    #[error("sup-plus-integral constant not applicable: |(1+λα)(1+λβ)| = {abs_product} ≥ 1")]
    NotApplicable { abs_product: f64 },
    /// `hZ` reduction asked outside `λ < -1/h`, `λ ≠ -2/h`.
    #[error("(h, lambda) = ({h}, {lambda}) outside the hZ reduction regime")]
    OutOfRegime { h: f64, lambda: f64 },
    /// Brute-force pattern search beyond the exhaustive cap.
    #[error("brute-force search over {requested} points exceeds the cap of {cap}")]
    TooLarge { requested: usize, cap: usize },
    /// Explicit perturbation sequence with the wrong length or out of bound.
    #[error("explicit perturbation: {0}")]
    BadPerturbation(String),
    /// A grid function needs at least one forward step.
    #[error("grid function needs at least 2 samples, got {0}")]
    TooShort(usize),
}
