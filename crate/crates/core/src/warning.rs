use serde::{Deserialize, Serialize};

/// Non-fatal diagnostics attached to solver output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "warning", rename_all = "snake_case")]
pub enum Warning {
    /// Boundary mixing angle exceeds the weak-probe bound.
    WeakProbeExceeded { max_theta: f64 },
    /// Tabulated coupling log-derivative was clamped at this many samples.
    LogDerivativeClamped { samples: usize },
    /// Probe present where the coupling vanishes; mixing angle set to zero.
    UndefinedMixingAngle { samples: usize },
    /// The probe does not start from zero on the grid.
    NotCounterintuitive { theta_start: f64 },
    /// Half-resolution comparison suggests the quadrature error is too large.
    Resolution {
        z: f64,
        estimate: f64,
        tolerance: f64,
    },
    /// An asymptote was evaluated outside its regime.
    RegimeViolated { condition: String, margin: f64 },
    /// Polariton correction divided by a vanishing width at this many points.
    CorrectionClamped { samples: usize },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::WeakProbeExceeded { max_theta } => {
                write!(f, "max |theta_0| = {max_theta:.3e} exceeds the weak-probe bound")
            }
            Self::LogDerivativeClamped { samples } => {
                write!(f, "coupling log-derivative clamped at {samples} samples")
            }
            Self::UndefinedMixingAngle { samples } => {
                write!(f, "mixing angle undefined (zero coupling) at {samples} samples")
            }
            Self::NotCounterintuitive { theta_start } => {
                write!(f, "probe does not start from zero (theta_0 = {theta_start:.3e})")
            }
            Self::Resolution {
                z,
                estimate,
                tolerance,
            } => write!(
                f,
                "quadrature error estimate {estimate:.2e} at z = {z} exceeds {tolerance:.1e}"
            ),
            Self::RegimeViolated { condition, margin } => {
                write!(f, "{condition} violated (margin {margin:.3})")
            }
            Self::CorrectionClamped { samples } => {
                write!(f, "polariton correction clamped at {samples} points")
            }
        }
    }
}
