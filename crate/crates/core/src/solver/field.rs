use serde::{Deserialize, Serialize};

use crate::physics::TimeGrid;
use crate::warning::Warning;

/// How a [`SolutionField`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    #[serde(rename = "full")]
    FullIntegral,
    #[serde(rename = "full_gamma")]
    FullIntegralGamma,
    #[serde(rename = "polariton")]
    PolaritonAsymptote,
    #[serde(rename = "blurring")]
    BlurringAsymptote,
    #[serde(rename = "matched")]
    MatchedPulse,
    OracleMb,
    OraclePde,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::FullIntegral,
        Method::FullIntegralGamma,
        Method::PolaritonAsymptote,
        Method::BlurringAsymptote,
        Method::MatchedPulse,
        Method::OracleMb,
        Method::OraclePde,
    ];

    /// Short name used on the command line and in file names.
    pub fn name(self) -> &'static str {
        match self {
            Self::FullIntegral => "full",
            Self::FullIntegralGamma => "full_gamma",
            Self::PolaritonAsymptote => "polariton",
            Self::BlurringAsymptote => "blurring",
            Self::MatchedPulse => "matched",
            Self::OracleMb => "oracle_mb",
            Self::OraclePde => "oracle_pde",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn is_oracle(self) -> bool {
        matches!(self, Self::OracleMb | Self::OraclePde)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Mixing angle (and, for the oracles, the probe field and ground-state
/// coherence) at one depth.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub z: f64,
    pub theta: Vec<f64>,
    pub omega_p: Option<Vec<f64>>,
    pub rho21: Option<Vec<f64>>,
}

impl Column {
    pub fn theta_only(z: f64, theta: Vec<f64>) -> Self {
        Self {
            z,
            theta,
            omega_p: None,
            rho21: None,
        }
    }
}

/// `theta(z, t)` sampled on a time grid at a list of depths.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionField {
    pub method: Method,
    pub grid: TimeGrid,
    pub columns: Vec<Column>,
    /// Coupling amplitude on the grid, for converting back to probe field.
    pub omega_c: Vec<f64>,
    pub warnings: Vec<Warning>,
}

impl SolutionField {
    pub fn z_values(&self) -> Vec<f64> {
        self.columns.iter().map(|c| c.z).collect()
    }

    pub fn column(&self, z: f64) -> Option<&Column> {
        self.columns.iter().find(|c| c.z == z)
    }

    pub fn theta(&self, z: f64) -> Option<&[f64]> {
        self.column(z).map(|c| c.theta.as_slice())
    }

    /// Probe Rabi frequency at depth `z`: stored by the oracles, otherwise
    /// `theta * Omega_c`.
    pub fn probe_field(&self, z: f64) -> Option<Vec<f64>> {
        let col = self.column(z)?;
        Some(match &col.omega_p {
            Some(p) => p.clone(),
            None => col
                .theta
                .iter()
                .zip(&self.omega_c)
                .map(|(th, om)| th * om)
                .collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.columns
            .iter()
            .flat_map(|c| c.theta.iter())
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.columns
            .iter()
            .all(|c| c.theta.iter().all(|v| v.is_finite()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(Method::from_name(m.name()), Some(m));
        }
        assert_eq!(Method::from_name("nope"), None);
    }
}
