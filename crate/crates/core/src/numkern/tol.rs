use serde::{Deserialize, Serialize};

/// Absolute/relative tolerance pair shared by every comparison in the crate.
///
/// A quantity is treated as zero when its magnitude is at most
/// `abs + rel * scale`, where `scale` is the max-norm of the inputs the
/// comparison is about.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        assert!(abs >= 0.0 && rel >= 0.0, "tolerances must be nonnegative");
        Tolerance { abs, rel }
    }

    /// Same value for `abs` and `rel`.
    pub fn uniform(eps: f64) -> Self {
        Tolerance::new(eps, eps)
    }

    /// Threshold for a quantity of magnitude `scale`.
    #[inline]
    pub fn threshold(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.abs()
    }

    #[inline]
    pub fn is_zero(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.threshold(scale)
    }

    #[inline]
    pub fn is_positive(&self, value: f64, scale: f64) -> bool {
        value > self.threshold(scale)
    }
}

/// Support σ(x) = {i : x_i > tol}, tolerance scaled by max |x_i|.
pub fn support(x: &[f64], tol: Tolerance) -> Vec<usize> {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let thr = tol.threshold(scale);
    x.iter()
        .enumerate()
        .filter(|(_, v)| **v > thr)
        .map(|(i, _)| i)
        .collect()
}
