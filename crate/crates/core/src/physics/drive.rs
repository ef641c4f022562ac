use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::physics::{
    gamma1_of_t, CouplingProfile, CumulativeIntegral, Gamma1Model, MediumParams, ProbeEnvelope,
    TimeGrid,
};
use crate::warning::Warning;

/// Largest boundary mixing angle for which the weak-probe treatment holds.
pub const WEAK_PROBE_BOUND: f64 = 0.1;

/// Everything needed to drive one propagation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub medium: MediumParams,
    pub probe: ProbeEnvelope,
    pub coupling: CouplingProfile,
    pub grid: TimeGrid,
}

impl Scenario {
    pub fn new(
        medium: MediumParams,
        probe: ProbeEnvelope,
        coupling: CouplingProfile,
        grid: TimeGrid,
    ) -> Result<Self> {
        let scenario = Self {
            medium,
            probe,
            coupling,
            grid,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        self.medium.validate()?;
        self.probe.validate()?;
        self.coupling.validate()?;
        self.grid.validate()?;
        let dt = self.grid.step();
        let any_coupling = (0..self.grid.len()).any(|i| self.coupling.omega(self.grid.t_min + i as f64 * dt) > 0.0);
        if !any_coupling {
            return Err(invalid(
                "coupling",
                "coupling vanishes on the whole grid, the mixing angle is undefined",
            ));
        }
        Ok(())
    }

    /// Model implied by the medium: dephasing-aware only when it matters.
    pub fn natural_model(&self) -> Gamma1Model {
        if self.medium.gamma_coherence > 0.0 {
            Gamma1Model::WithGroundDephasing
        } else {
            Gamma1Model::UpperLevelOnly
        }
    }

    /// Characteristic probe duration `T`.
    pub fn duration(&self) -> f64 {
        self.probe.duration(&self.grid)
    }

    pub fn sample(&self, model: Gamma1Model) -> Result<Drive> {
        Drive::sample(self, model)
    }
}

/// Boundary data and rates sampled on the time grid.
#[derive(Debug, Clone)]
pub struct Drive {
    pub model: Gamma1Model,
    pub grid: TimeGrid,
    /// Rate subtracted inside the accumulated opacity (the ground-state
    /// dephasing for the dephasing-aware model, zero otherwise).
    pub subtract: f64,
    pub theta0: Vec<f64>,
    pub theta0_dot: Vec<f64>,
    pub omega_c: Vec<f64>,
    pub probe_field: Vec<f64>,
    pub gamma1: Vec<f64>,
    /// Prefix integral of `gamma1 - subtract`.
    pub alpha: CumulativeIntegral,
    pub warnings: Vec<Warning>,
}

impl Drive {
    pub fn sample(scenario: &Scenario, model: Gamma1Model) -> Result<Self> {
        scenario.validate()?;
        let grid = scenario.grid;
        let subtract = match model {
            Gamma1Model::UpperLevelOnly => 0.0,
            Gamma1Model::WithGroundDephasing => scenario.medium.gamma_coherence,
        };
        let n = grid.len();
        let mut theta0 = Vec::with_capacity(n);
        let mut theta0_dot = Vec::with_capacity(n);
        let mut omega_c = Vec::with_capacity(n);
        let mut probe_field = Vec::with_capacity(n);
        let mut gamma1 = Vec::with_capacity(n);
        let mut clamped = 0usize;
        let mut undefined = 0usize;
        for t in grid.times() {
            let b = scenario.probe.boundary(&scenario.coupling, t);
            if !b.defined {
                undefined += 1;
            }
            theta0.push(b.theta);
            theta0_dot.push(b.theta_dot);
            omega_c.push(scenario.coupling.omega(t));
            probe_field.push(scenario.probe.probe_field(&scenario.coupling, t));
            let g = gamma1_of_t(&scenario.medium, &scenario.coupling, t, model)?;
            clamped += g.clamped as usize;
            gamma1.push(g.value);
        }
        let shifted: Vec<f64> = gamma1.iter().map(|g| g - subtract).collect();
        let alpha = CumulativeIntegral::new(grid, shifted);

        let mut warnings = Vec::new();
        let max_theta = theta0.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if max_theta > WEAK_PROBE_BOUND {
            warnings.push(Warning::WeakProbeExceeded { max_theta });
        }
        if clamped > 0 {
            warnings.push(Warning::LogDerivativeClamped { samples: clamped });
        }
        if undefined > 0 {
            warnings.push(Warning::UndefinedMixingAngle { samples: undefined });
        }
        Ok(Self {
            model,
            grid,
            subtract,
            theta0,
            theta0_dot,
            omega_c,
            probe_field,
            gamma1,
            alpha,
            warnings,
        })
    }

    pub fn max_abs_theta0(&self) -> f64 {
        self.theta0.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn max_gamma1(&self) -> f64 {
        self.gamma1.iter().fold(0.0f64, |m, v| m.max(*v))
    }

    /// Whether the probe starts from zero (coupling switched on first).
    pub fn is_counterintuitive(&self) -> bool {
        let max = self.max_abs_theta0();
        max == 0.0 || self.theta0[0].abs() <= 1e-6 * max
    }
}
