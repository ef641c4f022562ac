use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Relaxation rates of the medium.
///
/// Everything is expressed in units where the upper-level width sets the
/// scale: times in `1/gamma_upper`, Rabi frequencies in `gamma_upper`, and
/// depth as the optical depth `z`. The absorption coefficient `q_p` only enters
/// through the conversion between physical length and `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumParams {
    /// Width of the excited level (spontaneous decay plus dephasing).
    pub gamma_upper: f64,
    /// Decay rate of the ground-state coherence.
    #[serde(default)]
    pub gamma_coherence: f64,
    /// Resonant absorption coefficient, per unit length times rate.
    #[serde(default = "unit")]
    pub q_p: f64,
}

fn unit() -> f64 {
    1.0
}

impl Default for MediumParams {
    fn default() -> Self {
        Self {
            gamma_upper: 1.0,
            gamma_coherence: 0.0,
            q_p: 1.0,
        }
    }
}

impl MediumParams {
    pub fn new(gamma_upper: f64, gamma_coherence: f64, q_p: f64) -> Result<Self> {
        let medium = Self {
            gamma_upper,
            gamma_coherence,
            q_p,
        };
        medium.validate()?;
        Ok(medium)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma_upper.is_finite() && self.gamma_upper > 0.0) {
            return Err(invalid("gamma_upper", "must be finite and > 0"));
        }
        if !(self.gamma_coherence.is_finite() && self.gamma_coherence >= 0.0) {
            return Err(invalid("gamma_coherence", "must be finite and >= 0"));
        }
        if !(self.q_p.is_finite() && self.q_p > 0.0) {
            return Err(invalid("q_p", "must be finite and > 0"));
        }
        Ok(())
    }

    /// Total decay rate of the probe coherence, `gamma_upper + gamma_coherence`.
    pub fn depth_rate(&self) -> f64 {
        self.gamma_upper + self.gamma_coherence
    }

    /// Optical depth of a physical length `x`.
    pub fn optical_depth(&self, x: f64) -> f64 {
        self.q_p * x / self.depth_rate()
    }

    /// Inverse of [`optical_depth`](Self::optical_depth).
    pub fn length_of_depth(&self, z: f64) -> f64 {
        z * self.depth_rate() / self.q_p
    }
}
