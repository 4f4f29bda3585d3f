//! Centered uniform grid axes shared by characteristic-function and density
//! grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform axis with nodes `(i - n/2) * step` for `i` in `0..n` (n even).
/// Node `n/2` sits exactly at zero; the positive end `+extent` itself is
/// excluded, the standard layout for discrete Fourier pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridAxis {
    n: usize,
    step: f64,
}

impl GridAxis {
    pub fn new(n: usize, step: f64) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::ContractViolation(format!(
                "grid axis needs an even point count >= 2, got {n}"
            )));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::ContractViolation(format!("bad grid step {step}")));
        }
        Ok(Self { n, step })
    }

    /// Axis covering `[-extent, extent)` with `n` points.
    pub fn symmetric(extent: f64, n: usize) -> Result<Self> {
        if !(extent > 0.0) {
            return Err(Error::ContractViolation(format!("bad grid extent {extent}")));
        }
        Self::new(n, 2.0 * extent / n as f64)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Lowest node value (the half-extent with a minus sign).
    pub fn start(&self) -> f64 {
        -(self.n as f64 / 2.0) * self.step
    }

    pub fn extent(&self) -> f64 {
        (self.n as f64 / 2.0) * self.step
    }

    #[inline]
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - self.n as f64 / 2.0) * self.step
    }

    /// Index of the node at zero.
    pub fn zero_index(&self) -> usize {
        self.n / 2
    }

    /// Index holding the value `-node(i)`, when that mirror exists on the
    /// axis (every node except the unpaired lowest one).
    pub fn mirror_index(&self, i: usize) -> Option<usize> {
        if i == 0 {
            None
        } else {
            Some(self.n - i)
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }

    /// The reciprocal axis for discrete Fourier pairing: same point count,
    /// step `2*pi / (n * step)`.
    pub fn reciprocal(&self) -> Self {
        Self { n: self.n, step: std::f64::consts::TAU / (self.n as f64 * self.step) }
    }
}
