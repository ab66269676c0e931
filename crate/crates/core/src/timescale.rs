//! The two-step time scale `T_{α,β} = {0, α, α+β, (α+β)+α, 2(α+β), ...}` and
//! its calculus: graininess, forward jump, the exponential function, the
//! Δ-derivative, and Δ-sums of `|e_λ|`.
//!
//! Grid points are held as `(k, phase)` rather than raw `t`, so phase logic
//! never depends on float classification of `t mod (α+β)`; `t` is derived.

use crate::error::Error;
use crate::tol::Tolerances;
use serde::{Deserialize, Serialize};

/// The two step sizes `(α, β)` defining `T_{α,β}`.
///
/// Strict pairs enforce `α ≠ β`, which the case partition assumes. The
/// relaxed constructor exists solely for the `hZ`-reduction identity where
/// `α = β = h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepPair {
    alpha: f64,
    beta: f64,
    strict: bool,
}

impl StepPair {
    /// Strict pair: `α, β > 0` and `α ≠ β`.
    pub fn new(alpha: f64, beta: f64) -> Result<Self, Error> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidSteps(format!("alpha = {alpha} must be positive")));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidSteps(format!("beta = {beta} must be positive")));
        }
        if alpha == beta {
            return Err(Error::InvalidSteps(format!(
                "alpha = beta = {alpha}; the two-step scale needs distinct steps"
            )));
        }
        Ok(Self { alpha, beta, strict: true })
    }

    /// Relaxed pair allowing `α = β` (the `hZ` case).
    pub fn relaxed(alpha: f64, beta: f64) -> Result<Self, Error> {
        if !(alpha > 0.0) || !alpha.is_finite() || !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidSteps(format!(
                "steps ({alpha}, {beta}) must be positive"
            )));
        }
        Ok(Self { alpha, beta, strict: false })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Cycle length `α + β`.
    pub fn period(&self) -> f64 {
        self.alpha + self.beta
    }

    /// `(1+λα)(1+λβ)`, the two-step growth factor of `e_λ`.
    pub fn product(&self, lambda: f64) -> f64 {
        (1.0 + lambda * self.alpha) * (1.0 + lambda * self.beta)
    }

    /// True when `1 + λμ(t) ≠ 0` everywhere, i.e. `λ ∉ {-1/α, -1/β}` up to
    /// the given absolute tolerance.
    pub fn is_regressive(&self, lambda: f64, tol: &Tolerances) -> bool {
        (lambda + 1.0 / self.alpha).abs() > tol.regressive
            && (lambda + 1.0 / self.beta).abs() > tol.regressive
    }

    pub fn check_regressive(&self, lambda: f64, tol: &Tolerances) -> Result<(), Error> {
        if self.is_regressive(lambda, tol) {
            Ok(())
        } else {
            Err(Error::NonRegressive { lambda })
        }
    }
}

/// Whether a grid point opens a cycle (`t = k(α+β)`, gap `α` ahead) or sits
/// mid-cycle (`t = k(α+β)+α`, gap `β` ahead).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    Even,
    Odd,
}

/// A point of `T_{α,β}` addressed as (cycle index, phase).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub k: u32,
    pub phase: Phase,
}

impl GridPoint {
    pub fn new(k: u32, phase: Phase) -> Self {
        Self { k, phase }
    }

    pub fn origin() -> Self {
        Self { k: 0, phase: Phase::Even }
    }

    /// Position in the enumeration `(0,E), (0,O), (1,E), ...`.
    pub fn index(&self) -> usize {
        2 * self.k as usize
            + match self.phase {
                Phase::Even => 0,
                Phase::Odd => 1,
            }
    }

    pub fn from_index(i: usize) -> Self {
        Self {
            k: (i / 2) as u32,
            phase: if i % 2 == 0 { Phase::Even } else { Phase::Odd },
        }
    }

    /// The real time value `t` of this point.
    pub fn t(&self, steps: &StepPair) -> f64 {
        let base = self.k as f64 * steps.period();
        match self.phase {
            Phase::Even => base,
            Phase::Odd => base + steps.alpha(),
        }
    }
}

/// Graininess `μ(t)`: the gap to the next grid point.
pub fn mu(steps: &StepPair, p: GridPoint) -> f64 {
    match p.phase {
        Phase::Even => steps.alpha(),
        Phase::Odd => steps.beta(),
    }
}

/// Forward jump `σ`: the next grid point, with `t(σ(p)) = t(p) + μ(p)`.
pub fn sigma(p: GridPoint) -> GridPoint {
    match p.phase {
        Phase::Even => GridPoint::new(p.k, Phase::Odd),
        Phase::Odd => GridPoint::new(p.k + 1, Phase::Even),
    }
}

/// The time-scale exponential `e_λ(t, 0)`: the unique solution of
/// `x^Δ = λx` with `x(0) = 1`.
///
/// `[(1+λα)(1+λβ)]^k` at even points and `[(1+λα)(1+λβ)]^k (1+λα)` at odd
/// points. The integer power keeps the sign exact when the product is
/// negative.
pub fn exp_lambda(steps: &StepPair, lambda: f64, p: GridPoint) -> Result<f64, Error> {
    exp_lambda_tol(steps, lambda, p, &Tolerances::default())
}

pub fn exp_lambda_tol(
    steps: &StepPair,
    lambda: f64,
    p: GridPoint,
    tol: &Tolerances,
) -> Result<f64, Error> {
    steps.check_regressive(lambda, tol)?;
    let pow = steps.product(lambda).powi(p.k as i32);
    Ok(match p.phase {
        Phase::Even => pow,
        Phase::Odd => pow * (1.0 + lambda * steps.alpha()),
    })
}

/// A real-valued function sampled on consecutive grid points starting at
/// `(0, Even)`; houses perturbed solutions `φ` and exact solutions `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridFunction {
    steps: StepPair,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(steps: StepPair, values: Vec<f64>) -> Result<Self, Error> {
        if values.len() < 2 {
            return Err(Error::TooShort(values.len()));
        }
        Ok(Self { steps, values })
    }

    /// Sample the closure `f(t)` on the first `n` grid points.
    pub fn sample(steps: StepPair, n: usize, mut f: impl FnMut(f64) -> f64) -> Result<Self, Error> {
        let values = (0..n)
            .map(|i| f(GridPoint::from_index(i).t(&steps)))
            .collect();
        Self::new(steps, values)
    }

    pub fn steps(&self) -> &StepPair {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, p: GridPoint) -> Result<f64, Error> {
        self.values
            .get(p.index())
            .copied()
            .ok_or(Error::OutOfRange { index: p.index(), len: self.values.len() })
    }
}

/// The Δ-derivative `(f(σ(p)) - f(p)) / μ(p)`.
pub fn delta_derivative(f: &GridFunction, p: GridPoint) -> Result<f64, Error> {
    let here = f.get(p)?;
    let next = f.get(sigma(p))?;
    Ok((next - here) / mu(f.steps(), p))
}

/// `Σ_{j=0}^{n-1} r^j`, stable at `r = 1`.
fn geom(r: f64, n: u32) -> f64 {
    if (r - 1.0).abs() < 1e-12 {
        n as f64
    } else {
        (r.powi(n as i32) - 1.0) / (r - 1.0)
    }
}

/// Closed form of `∫_0^t |e_λ(t, σ(s))| Δs` with `t = t(end)`.
///
/// Even end `t = k(α+β)`:
/// `(|p|^k - 1)/(|p| - 1) · (α|p|^{β/(α+β)} + β)`; the odd end carries the
/// extra opening gap. `p = (1+λα)(1+λβ)`.
pub fn delta_sum_abs_exp(steps: &StepPair, lambda: f64, end: GridPoint) -> Result<f64, Error> {
    steps.check_regressive(lambda, &Tolerances::default())?;
    let ap = steps.product(lambda).abs();
    let period = steps.period();
    let (alpha, beta) = (steps.alpha(), steps.beta());
    Ok(match end.phase {
        Phase::Even => geom(ap, end.k) * (alpha * ap.powf(beta / period) + beta),
        Phase::Odd => beta * ap.powf(alpha / period) * geom(ap, end.k) + alpha * geom(ap, end.k + 1),
    })
}

/// The same Δ-sum by direct summation `Σ μ(p)·|e_λ(t, σ(p))|` over grid
/// points `p` with `t(p) < t(end)`; kept as an independent cross-check of
/// the closed form.
///
/// The integrand follows the fractional-exponent modulus
/// `|e_λ(t, σ(s))| = |p|^{(t - σ(s))/(α+β)}`, the form the closed-form
/// derivation and the limits are built on.
pub fn delta_sum_abs_exp_direct(
    steps: &StepPair,
    lambda: f64,
    end: GridPoint,
) -> Result<f64, Error> {
    steps.check_regressive(lambda, &Tolerances::default())?;
    let ap = steps.product(lambda).abs();
    let t_end = end.t(steps);
    let period = steps.period();
    let mut sum = 0.0;
    for i in 0..end.index() {
        let p = GridPoint::from_index(i);
        sum += mu(steps, p) * ap.powf((t_end - sigma(p).t(steps)) / period);
    }
    Ok(sum)
}

/// `lim_{t→∞} ∫_0^t |e_λ(t, σ(s))| Δs` along even or odd points.
///
/// Requires `|p| < 1`; even limit `(β + α|p|^{β/(α+β)})/(1 - |p|)`, odd
/// limit `(α + β|p|^{α/(α+β)})/(1 - |p|)`.
pub fn delta_sum_limit(steps: &StepPair, lambda: f64, phase: Phase) -> Result<f64, Error> {
    steps.check_regressive(lambda, &Tolerances::default())?;
    let ap = steps.product(lambda).abs();
    if ap >= 1.0 {
        return Err(Error::NotConvergent { abs_product: ap });
    }
    let period = steps.period();
    let (alpha, beta) = (steps.alpha(), steps.beta());
    Ok(match phase {
        Phase::Even => (beta + alpha * ap.powf(beta / period)) / (1.0 - ap),
        Phase::Odd => (alpha + beta * ap.powf(alpha / period)) / (1.0 - ap),
    })
}
