//! Python bindings: stability classification, constants, comparisons and
//! empirical verification for `x^Δ = λx` on the two-step time scale.
//!
//! Structured results cross the boundary as plain dicts so they print and
//! destructure naturally in Python.

use hus_core::classifier::classify;
use hus_core::{
    adversarial_lower_bound, andras_constant, builtin_examples, compare_table, exp_lambda,
    hz_reduction_check, theorem_constant, verify_case, CompareRow, Error, GridPoint, HusReason,
    Phase, SearchMode,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A pair of alternating step sizes `(α, β)` with `α, β > 0`, `α ≠ β`.
#[pyclass(name = "StepPair")]
struct PyStepPair {
    inner: hus_core::StepPair,
}

fn row_dict<'py>(py: Python<'py>, row: &CompareRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("lambda", row.lambda)?;
    d.set_item("case", row.case.as_str())?;
    d.set_item("theorem_constant", row.theorem_constant)?;
    d.set_item("andras_even", row.andras_even)?;
    d.set_item("andras_odd", row.andras_odd)?;
    d.set_item("winner", row.winner.to_string())?;
    Ok(d)
}

#[pymethods]
impl PyStepPair {
    #[new]
    fn new(alpha: f64, beta: f64) -> PyResult<Self> {
        Ok(PyStepPair {
            inner: hus_core::StepPair::new(alpha, beta).map_err(to_py_err)?,
        })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.inner.beta()
    }

    /// The product `p = (1+λα)(1+λβ)` that controls stability.
    fn product(&self, lambda: f64) -> f64 {
        self.inner.product(lambda)
    }

    /// Grid time of the point with index `i` (even indices sit after full
    /// periods, odd indices after the extra α step).
    fn t(&self, i: usize) -> f64 {
        GridPoint::from_index(i).t(&self.inner)
    }

    /// The exponential `e_λ(t, 0)` at grid index `i`.
    fn exp(&self, lambda: f64, i: usize) -> PyResult<f64> {
        exp_lambda(&self.inner, lambda, GridPoint::from_index(i)).map_err(to_py_err)
    }

    /// Place `λ` in the eleven-case stability partition.
    fn classify<'py>(&self, py: Python<'py>, lambda: f64) -> PyResult<Bound<'py, PyDict>> {
        let label = classify(&self.inner, lambda).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("case", label.tag.as_str())?;
        d.set_item("lambda_plus", label.thresholds.lambda_plus)?;
        d.set_item("lambda_minus", label.thresholds.lambda_minus)?;
        d.set_item("product", label.thresholds.product)?;
        d.set_item("discriminant", label.thresholds.discriminant)?;
        Ok(d)
    }

    /// Evaluate the per-case stability constant.
    fn theorem_constant<'py>(&self, py: Python<'py>, lambda: f64) -> PyResult<Bound<'py, PyDict>> {
        let verdict = theorem_constant(&self.inner, lambda).map_err(to_py_err)?;
        let reason = match verdict.reason {
            HusReason::HasConstant => "has_constant",
            HusReason::NoHus => "no_hus",
            HusReason::NotRegressive => "not_regressive",
        };
        let d = PyDict::new(py);
        d.set_item("case", verdict.case.tag.as_str())?;
        d.set_item("constant", verdict.constant)?;
        d.set_item("minimal", verdict.minimal)?;
        d.set_item("reason", reason)?;
        Ok(d)
    }

    /// Evaluate the sup-plus-integral constant, branch by branch.
    fn andras_constant<'py>(&self, py: Python<'py>, lambda: f64) -> PyResult<Bound<'py, PyDict>> {
        let k = andras_constant(&self.inner, lambda).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("even_branch", k.even_branch)?;
        d.set_item("odd_branch", k.odd_branch)?;
        d.set_item("sup_even", k.sup_even)?;
        d.set_item("sup_odd", k.sup_odd)?;
        d.set_item("tail_even", k.tail_even)?;
        d.set_item("tail_odd", k.tail_odd)?;
        Ok(d)
    }

    /// Compare both constants over a list of `λ` values.
    fn compare<'py>(
        &self,
        py: Python<'py>,
        lambdas: Vec<f64>,
    ) -> PyResult<Vec<Bound<'py, PyDict>>> {
        compare_table(&self.inner, &lambdas)
            .iter()
            .map(|row| row_dict(py, row))
            .collect()
    }

    /// Check the claimed constant against an adversarial lower bound.
    #[pyo3(signature = (lambda, n_points = 13))]
    fn verify<'py>(
        &self,
        py: Python<'py>,
        lambda: f64,
        n_points: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let report = verify_case(&self.inner, lambda, n_points).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("case", report.case.as_str())?;
        d.set_item("claimed_constant", report.claimed_constant)?;
        d.set_item("empirical_lower_bound", report.empirical_lower_bound)?;
        d.set_item("margin", report.margin)?;
        d.set_item("pass", report.pass)?;
        Ok(d)
    }

    /// Maximize the deviation-to-ε ratio over sign patterns.
    /// `mode` is one of "bruteforce", "greedy", "alternating".
    #[pyo3(signature = (lambda, n_points = 13, mode = "greedy"))]
    fn adversarial_lower_bound<'py>(
        &self,
        py: Python<'py>,
        lambda: f64,
        n_points: usize,
        mode: &str,
    ) -> PyResult<Bound<'py, PyDict>> {
        let mode = match mode {
            "bruteforce" => SearchMode::BruteForce,
            "greedy" => SearchMode::Greedy,
            "alternating" => SearchMode::AlternatingBest,
            other => {
                return Err(PyValueError::new_err(format!("unknown search mode {other:?}")))
            }
        };
        let result =
            adversarial_lower_bound(&self.inner, lambda, n_points, mode).map_err(to_py_err)?;
        let d = PyDict::new(py);
        d.set_item("ratio", result.ratio)?;
        d.set_item("pattern", result.pattern)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("StepPair(alpha={}, beta={})", self.inner.alpha(), self.inner.beta())
    }
}

/// The `G`/`H` constant at `α = β = h` next to the known minimal constant
/// for the uniform grid `hZ`; returns `(reduced, minimal)`.
#[pyfunction]
fn hz_reduction(h: f64, lambda: f64) -> PyResult<(f64, f64)> {
    hz_reduction_check(h, lambda).map_err(to_py_err)
}

/// The eight built-in reference points with their published values.
#[pyfunction]
fn reference_examples(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    builtin_examples()
        .iter()
        .map(|ex| {
            let d = PyDict::new(py);
            d.set_item("alpha", ex.alpha)?;
            d.set_item("beta", ex.beta)?;
            d.set_item("lambda", ex.lambda)?;
            d.set_item("expected_theorem", ex.expected_theorem)?;
            d.set_item("expected_even", ex.expected_even)?;
            d.set_item("expected_odd", ex.expected_odd)?;
            d.set_item("expected_winner", ex.expected_winner.to_string())?;
            Ok(d)
        })
        .collect()
}

/// Sum of `μ|e_λ(t, σ(s))|` up to the grid point `(k, odd)`; the infinite
/// limit when `k` is omitted.
#[pyfunction]
#[pyo3(signature = (alpha, beta, lambda, k = None, odd = false))]
fn abs_exp_sum(alpha: f64, beta: f64, lambda: f64, k: Option<u32>, odd: bool) -> PyResult<f64> {
    let s = hus_core::StepPair::new(alpha, beta).map_err(to_py_err)?;
    let phase = if odd { Phase::Odd } else { Phase::Even };
    match k {
        Some(k) => hus_core::delta_sum_abs_exp(&s, lambda, GridPoint::new(k, phase)),
        None => hus_core::delta_sum_limit(&s, lambda, phase),
    }
    .map_err(to_py_err)
}

#[pymodule]
fn hus_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStepPair>()?;
    m.add_function(wrap_pyfunction!(hz_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(reference_examples, m)?)?;
    m.add_function(wrap_pyfunction!(abs_exp_sum, m)?)?;
    Ok(())
}
