use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Uniform sampling of retarded time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub n_points: usize,
}

impl TimeGrid {
    pub fn new(t_min: f64, t_max: f64, n_points: usize) -> Result<Self> {
        let grid = Self {
            t_min,
            t_max,
            n_points,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < 2 {
            return Err(invalid("n_points", "need at least two grid points"));
        }
        if !(self.t_min.is_finite() && self.t_max.is_finite() && self.t_max > self.t_min) {
            return Err(invalid("t_max", "grid must satisfy t_min < t_max"));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn step(&self) -> f64 {
        (self.t_max - self.t_min) / (self.n_points - 1) as f64
    }

    #[inline]
    pub fn time(&self, index: usize) -> f64 {
        self.t_min + index as f64 * self.step()
    }

    pub fn times(&self) -> Vec<f64> {
        let dt = self.step();
        (0..self.n_points)
            .map(|i| self.t_min + i as f64 * dt)
            .collect()
    }

    /// Same span with the step halved (`2n - 1` points); every original point
    /// is kept.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points - 1,
            ..*self
        }
    }

    /// Every other point of this grid (requires an odd point count).
    pub fn coarsened(&self) -> Option<Self> {
        (self.n_points % 2 == 1 && self.n_points >= 3).then(|| Self {
            n_points: self.n_points.div_ceil(2),
            ..*self
        })
    }

    /// Index of the cell containing `t` and the fractional position inside
    /// it, clamped to the grid.
    pub fn locate(&self, t: f64) -> (usize, f64) {
        let s = (t - self.t_min) / self.step();
        if s <= 0.0 {
            return (0, 0.0);
        }
        let last = self.n_points - 1;
        if s >= last as f64 {
            return (last - 1, 1.0);
        }
        let i = s.floor() as usize;
        (i, s - i as f64)
    }
}
