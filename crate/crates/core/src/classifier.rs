//! Partition of the `(α, β, λ)` parameter space into the eleven stability
//! cases `A..K`, together with the threshold eigenvalues `λ⁺`, `λ⁻` (the real
//! roots of `(1+λα)(1+λβ) = -1`) and the product `p = (1+λα)(1+λβ)`.
//!
//! Boundary collisions are resolved by priority `K → J → I → G/H → A-F`:
//! the exceptional sets `K` (non-regressive) and `J` (no HUS) are measure
//! zero and override interval membership.

use crate::error::Error;
use crate::timescale::StepPair;
use crate::tol::Tolerances;
use serde::{Deserialize, Serialize};

/// `(3 - 2√2)` and `(3 + 2√2)`: the step-ratio band outside of which the
/// threshold eigenvalues `λ±` are real.
pub fn ratio_band() -> (f64, f64) {
    let s = 2.0 * 2.0_f64.sqrt();
    (3.0 - s, 3.0 + s)
}

/// Threshold quantities attached to a classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Larger root of `αβλ² + (α+β)λ + 2 = 0`, present iff the discriminant
    /// `α² + β² - 6αβ` is nonnegative.
    pub lambda_plus: Option<f64>,
    /// Smaller root.
    pub lambda_minus: Option<f64>,
    /// `p = (1+λα)(1+λβ)` at the queried `λ`.
    pub product: f64,
    pub neg_inv_alpha: f64,
    pub neg_inv_beta: f64,
    /// `-1/α - 1/β`, the `G`/`H` split (and a no-HUS eigenvalue).
    pub neg_sum: f64,
    pub discriminant: f64,
}

/// The eleven cases of the stability partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::A => "A",
            CaseTag::B => "B",
            CaseTag::C => "C",
            CaseTag::D => "D",
            CaseTag::E => "E",
            CaseTag::F => "F",
            CaseTag::G => "G",
            CaseTag::H => "H",
            CaseTag::I => "I",
            CaseTag::J => "J",
            CaseTag::K => "K",
        }
    }

    /// Cases that admit an HUS constant.
    pub fn has_constant(&self) -> bool {
        !matches!(self, CaseTag::J | CaseTag::K)
    }
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseLabel {
    pub tag: CaseTag,
    pub thresholds: Thresholds,
}

/// Where the product `p = (1+λα)(1+λβ)` sits relative to `0` and `±1`;
/// an independent cross-check channel for [`classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProductSignature {
    /// Both factors positive.
    PosRegressive,
    /// `-1 < p < 0`.
    InUnitNeg,
    /// `p < -1`.
    BeyondUnitNeg,
    /// `0 < p < 1` with both factors negative.
    InUnitPos,
    /// `p > 1` with both factors negative.
    BeyondUnitPos,
    /// `|p| = 1` up to tolerance.
    OnUnit,
    /// `p = 0` up to tolerance.
    Zero,
}

/// Compute `λ±` and friends for a step pair at a given `λ`.
pub fn thresholds(steps: &StepPair, lambda: f64) -> Thresholds {
    let (alpha, beta) = (steps.alpha(), steps.beta());
    let disc = alpha * alpha + beta * beta - 6.0 * alpha * beta;
    let (lambda_plus, lambda_minus) = if disc >= 0.0 {
        let root = disc.sqrt();
        let denom = 2.0 * alpha * beta;
        (
            Some((-alpha - beta + root) / denom),
            Some((-alpha - beta - root) / denom),
        )
    } else {
        (None, None)
    };
    Thresholds {
        lambda_plus,
        lambda_minus,
        product: steps.product(lambda),
        neg_inv_alpha: -1.0 / alpha,
        neg_inv_beta: -1.0 / beta,
        neg_sum: -1.0 / alpha - 1.0 / beta,
        discriminant: disc,
    }
}

/// Classify `(α, β, λ)` into its case.
pub fn classify(steps: &StepPair, lambda: f64) -> Result<CaseLabel, Error> {
    classify_tol(steps, lambda, &Tolerances::default())
}

pub fn classify_tol(
    steps: &StepPair,
    lambda: f64,
    tol: &Tolerances,
) -> Result<CaseLabel, Error> {
    if !steps.is_strict() {
        return Err(Error::InvalidSteps(
            "classification requires distinct step sizes".into(),
        ));
    }
    let th = thresholds(steps, lambda);
    let snap = |target: f64| (lambda - target).abs() <= tol.snap;

    let tag = if snap(th.neg_inv_alpha) || snap(th.neg_inv_beta) {
        CaseTag::K
    } else if snap(0.0)
        || snap(th.neg_sum)
        || th.lambda_plus.is_some_and(snap)
        || th.lambda_minus.is_some_and(snap)
    {
        CaseTag::J
    } else {
        let (alpha, beta) = (steps.alpha(), steps.beta());
        let fa = 1.0 + lambda * alpha;
        let fb = 1.0 + lambda * beta;
        if fa > 0.0 && fb > 0.0 {
            CaseTag::I
        } else if fa < 0.0 && fb < 0.0 {
            if lambda > th.neg_sum {
                CaseTag::G
            } else {
                CaseTag::H
            }
        } else {
            // Factors of opposite sign; split by the step-ratio bands.
            let between = match (th.lambda_minus, th.lambda_plus) {
                (Some(lo), Some(hi)) => lo < lambda && lambda < hi,
                _ => false,
            };
            if alpha > beta {
                if th.discriminant >= 0.0 {
                    if between {
                        CaseTag::B
                    } else {
                        CaseTag::A
                    }
                } else {
                    CaseTag::C
                }
            } else if th.discriminant >= 0.0 {
                if between {
                    CaseTag::E
                } else {
                    CaseTag::D
                }
            } else {
                CaseTag::F
            }
        }
    };
    Ok(CaseLabel { tag, thresholds: th })
}

/// Classify the product `p = (1+λα)(1+λβ)` against `0` and `±1`.
pub fn product_signature(steps: &StepPair, lambda: f64) -> ProductSignature {
    product_signature_tol(steps, lambda, &Tolerances::default())
}

pub fn product_signature_tol(
    steps: &StepPair,
    lambda: f64,
    tol: &Tolerances,
) -> ProductSignature {
    let p = steps.product(lambda);
    if p.abs() <= tol.snap {
        ProductSignature::Zero
    } else if (p.abs() - 1.0).abs() <= tol.snap {
        ProductSignature::OnUnit
    } else if p < 0.0 {
        if p > -1.0 {
            ProductSignature::InUnitNeg
        } else {
            ProductSignature::BeyondUnitNeg
        }
    } else {
        let fa = 1.0 + lambda * steps.alpha();
        if fa > 0.0 {
            ProductSignature::PosRegressive
        } else if p < 1.0 {
            ProductSignature::InUnitPos
        } else {
            ProductSignature::BeyondUnitPos
        }
    }
}
