/// Numeric tolerances used when snapping floats onto the measure-zero
/// exceptional sets of the case partition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute band around `-1/α` and `-1/β` classified as non-regressive.
    pub regressive: f64,
    /// Absolute band around the exceptional eigenvalues `0`, `λ⁺`, `λ⁻`,
    /// `-1/α - 1/β` (the no-HUS set).
    pub snap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            regressive: 1e-12,
            snap: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn new(regressive: f64, snap: f64) -> Self {
        Self { regressive, snap }
    }
}
