//! Uniform dyadic grid on the circle parameter θ ∈ [0, 1).

use crate::error::{Error, Result};

/// θ_i = i/n for i = 0..n. n must be even so that θ + 1/2 stays on the grid;
/// powers of two are the convention used throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    n: usize,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "grid size must be even and ≥ 2, got {n}"
            )));
        }
        Ok(Grid { n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn theta(&self, i: usize) -> f64 {
        i as f64 / self.n as f64
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.theta(i))
    }

    /// Index of θ_i + 1/2 (mod 1).
    pub fn half_shift(&self, i: usize) -> usize {
        (i + self.n / 2) % self.n
    }

    /// Index of 2·θ_i (mod 1), used for Θ(ω²) lookups.
    pub fn double(&self, i: usize) -> usize {
        (2 * i) % self.n
    }

    /// Nearest grid index to an arbitrary θ (mod 1).
    pub fn nearest(&self, theta: f64) -> usize {
        let t = theta.rem_euclid(1.0);
        ((t * self.n as f64).round() as usize) % self.n
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid { n: 1024 }
    }
}
