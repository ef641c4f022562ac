//! Maxwell-Bloch marching oracle.
//!
//! On resonance with real envelopes the probe coherence is purely imaginary,
//! `rho31 = i u`, and the ground coherence real, `rho21 = v`, so the weak-probe
//! Bloch equations close over the reals:
//!
//! ```text
//! u' = -Gamma u + Omega_p + Omega_c v
//! v' = -gamma v - Omega_c u
//! dOmega_p/dz = -(Gamma + gamma) u
//! ```
//!
//! Nothing is adiabatically eliminated, so this oracle also measures the
//! model error of the reduced propagation equation.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::oracle::{l2, march, PropagationGrid};
use crate::physics::{Gamma1Model, Scenario};
use crate::solver::{Column, Method, SolutionField};

/// Coupling below this fraction of its maximum leaves the mixing angle
/// unreported (set to zero) in the output.
const DARK_FRACTION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BlochOptions {
    /// Largest Runge-Kutta step in time; grid cells are subdivided to meet it.
    pub max_substep: f64,
}

impl Default for BlochOptions {
    fn default() -> Self {
        Self { max_substep: 0.25 }
    }
}

struct Bloch {
    gamma_upper: f64,
    gamma_coherence: f64,
    substeps: usize,
    h: f64,
    /// Coupling at every half substep, `2 * substeps * cells + 1` values.
    omega_c: Vec<f64>,
}

impl Bloch {
    fn new(scenario: &Scenario, options: &BlochOptions) -> Result<Self> {
        if !(options.max_substep > 0.0 && options.max_substep.is_finite()) {
            return Err(invalid("max_substep", "must be finite and > 0"));
        }
        let grid = scenario.grid;
        let dt = grid.step();
        let substeps = (dt / options.max_substep).ceil().max(1.0) as usize;
        let h = dt / substeps as f64;
        let count = 2 * substeps * (grid.len() - 1) + 1;
        let omega_c = (0..count)
            .map(|k| scenario.coupling.omega(grid.t_min + 0.5 * h * k as f64))
            .collect();
        Ok(Self {
            gamma_upper: scenario.medium.gamma_upper,
            gamma_coherence: scenario.medium.gamma_coherence,
            substeps,
            h,
            omega_c,
        })
    }

    #[inline]
    fn rate(&self, u: f64, v: f64, p: f64, c: f64) -> (f64, f64) {
        (
            -self.gamma_upper * u + p + c * v,
            -self.gamma_coherence * v - c * u,
        )
    }

    /// `(u, v)` at the grid nodes for a probe field sampled on the grid,
    /// starting from the ground state. RK4 with the probe interpolated
    /// linearly inside each cell.
    fn solve(&self, probe: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let n = probe.len();
        let m = self.substeps;
        let h = self.h;
        let mut us = Vec::with_capacity(n);
        let mut vs = Vec::with_capacity(n);
        let (mut u, mut v) = (0.0, 0.0);
        us.push(u);
        vs.push(v);
        for i in 0..n - 1 {
            let (p0, p1) = (probe[i], probe[i + 1]);
            let p_at = |k2: usize| p0 + (p1 - p0) * k2 as f64 / (2 * m) as f64;
            for s in 0..m {
                let base = 2 * (m * i + s);
                let (c0, c1, c2) = (self.omega_c[base], self.omega_c[base + 1], self.omega_c[base + 2]);
                let (q0, q1, q2) = (p_at(2 * s), p_at(2 * s + 1), p_at(2 * s + 2));
                let k1 = self.rate(u, v, q0, c0);
                let k2 = self.rate(u + 0.5 * h * k1.0, v + 0.5 * h * k1.1, q1, c1);
                let k3 = self.rate(u + 0.5 * h * k2.0, v + 0.5 * h * k2.1, q1, c1);
                let k4 = self.rate(u + h * k3.0, v + h * k3.1, q2, c2);
                u += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
                v += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            }
            us.push(u);
            vs.push(v);
        }
        (us, vs)
    }
}

pub fn oracle_mb(scenario: &Scenario, pgrid: &PropagationGrid) -> Result<SolutionField> {
    oracle_mb_with(scenario, pgrid, &BlochOptions::default())
}

pub fn oracle_mb_with(
    scenario: &Scenario,
    pgrid: &PropagationGrid,
    options: &BlochOptions,
) -> Result<SolutionField> {
    let drive = scenario.sample(Gamma1Model::UpperLevelOnly)?;
    let bloch = Bloch::new(scenario, options)?;
    let depth_rate = scenario.medium.depth_rate();
    let rhs = |probe: &[f64]| -> Vec<f64> {
        let (u, _) = bloch.solve(probe);
        u.into_iter().map(|u| -depth_rate * u).collect()
    };
    let states = march(pgrid, drive.probe_field.clone(), rhs, l2)?;

    let omega_c = &drive.omega_c;
    let dark = DARK_FRACTION * omega_c.iter().fold(0.0f64, |m, v| m.max(*v));
    let columns = pgrid
        .z_values
        .iter()
        .zip(states)
        .map(|(&z, probe)| {
            let (_, v) = bloch.solve(&probe);
            let theta = probe
                .iter()
                .zip(omega_c)
                .map(|(p, &c)| if c > dark { p / c } else { 0.0 })
                .collect();
            Column {
                z,
                theta,
                omega_p: Some(probe),
                rho21: Some(v),
            }
        })
        .collect();
    Ok(SolutionField {
        method: Method::OracleMb,
        grid: drive.grid,
        columns,
        omega_c: drive.omega_c.clone(),
        warnings: drive.warnings.clone(),
    })
}
