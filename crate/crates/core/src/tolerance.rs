/// Numerical tolerance shared by all incidence and realness checks.
///
/// A quantity `x` measured against a natural magnitude `scale` counts as zero
/// when `|x| <= abs + rel * scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        rel: 1e-9,
        abs: 1e-12,
    };

    pub fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    pub fn is_zero(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.abs + self.rel * scale.abs()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}
