use crate::error::{invalid, Result};
use crate::physics::TimeGrid;
use crate::solver::field::{Column, Method, SolutionField};
use crate::solver::full::check_depths;

/// Probe and coupling switched on together with a fixed ratio: the mixing
/// angle does not change anywhere in the medium.
///
/// `omega_c` is the coupling amplitude used to report the probe field.
pub fn matched_pulse(
    theta0: f64,
    z_values: &[f64],
    grid: TimeGrid,
    omega_c: Vec<f64>,
) -> Result<SolutionField> {
    if !theta0.is_finite() {
        return Err(invalid("theta0", "must be finite"));
    }
    check_depths(z_values)?;
    grid.validate()?;
    if omega_c.len() != grid.len() {
        return Err(invalid("omega_c", "needs one sample per grid point"));
    }
    let columns = z_values
        .iter()
        .map(|&z| Column::theta_only(z, vec![theta0; grid.len()]))
        .collect();
    Ok(SolutionField {
        method: Method::MatchedPulse,
        grid,
        columns,
        omega_c,
        warnings: Vec::new(),
    })
}
