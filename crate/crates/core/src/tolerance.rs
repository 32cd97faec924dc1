use serde::{Deserialize, Serialize};

/// Absolute tolerance for real-valued inequality checks, in model units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-9);

    /// Returns `None` unless `value` is finite and strictly positive.
    pub fn new(value: f64) -> Option<Self> {
        (value.is_finite() && value > 0.0).then_some(Tolerance(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn scaled(self, factor: f64) -> Tolerance {
        Tolerance(self.0 * factor)
    }

    /// `a <= b` up to the tolerance.
    #[inline]
    pub fn le(self, a: f64, b: f64) -> bool {
        a <= b + self.0
    }

    #[inline]
    pub fn is_zero(self, a: f64) -> bool {
        a.abs() <= self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}
