//! Marching solver for the reduced propagation equation.
//!
//! With `w = d theta / dz` the equation becomes an ODE in time at fixed
//! depth, `w' = -Gamma_1 w - theta' - gamma theta` (the last term only with
//! ground-state dephasing), driven by the current `theta(z, .)`. Each cell is
//! integrated exactly for piecewise-linear `theta`, and `theta` is advanced in
//! depth with the explicit midpoint rule.

use crate::error::Result;
use crate::oracle::{etd_weights, l2, march, PropagationGrid};
use crate::physics::{Gamma1Model, Scenario};
use crate::solver::{Column, Method, SolutionField};

pub fn oracle_pde(
    scenario: &Scenario,
    pgrid: &PropagationGrid,
    model: Gamma1Model,
) -> Result<SolutionField> {
    let drive = scenario.sample(model)?;
    let h = drive.grid.step();
    let gamma = drive.subtract;
    let prefix = drive.alpha.prefix();
    // Per-cell decay factor and exponential weights for the full Gamma_1.
    let cells: Vec<(f64, f64, f64)> = prefix
        .windows(2)
        .map(|p| {
            let x = p[1] - p[0] + gamma * h;
            let (a, c) = etd_weights(x);
            ((-x).exp(), a, c)
        })
        .collect();

    let rhs = |theta: &[f64]| -> Vec<f64> {
        let mut w = Vec::with_capacity(theta.len());
        let mut acc = 0.0;
        w.push(acc);
        for (i, &(decay, a, c)) in cells.iter().enumerate() {
            let (l, r) = (theta[i], theta[i + 1]);
            acc = decay * acc - (r - l) * a - gamma * h * (l * c + r * (a - c));
            w.push(acc);
        }
        w
    };
    let omega_c = &drive.omega_c;
    let norm = |theta: &[f64]| {
        let p: Vec<f64> = theta.iter().zip(omega_c).map(|(t, o)| t * o).collect();
        l2(&p)
    };
    let states = march(pgrid, drive.theta0.clone(), rhs, norm)?;
    let columns = pgrid
        .z_values
        .iter()
        .zip(states)
        .map(|(&z, theta)| {
            let omega_p = theta.iter().zip(omega_c).map(|(t, o)| t * o).collect();
            Column {
                z,
                theta,
                omega_p: Some(omega_p),
                rho21: None,
            }
        })
        .collect();
    Ok(SolutionField {
        method: Method::OraclePde,
        grid: drive.grid,
        columns,
        omega_c: drive.omega_c.clone(),
        warnings: drive.warnings.clone(),
    })
}
