use crate::error::{invalid, Result};
use crate::oracle::etd_weights;
use crate::physics::{gamma1_of_t, CouplingProfile, CumulativeIntegral, Gamma1Model, MediumParams};
use crate::solver::SolutionField;

/// Integrates `rho21' = -Gamma_1 (rho21 + theta)` along one column.
///
/// `opacity` is the prefix integral of `Gamma_1` on the column's grid. Each
/// cell is integrated exactly for piecewise-linear `theta`, so with the
/// coupling off the coherence is held exactly.
pub fn coherence_column(theta: &[f64], opacity: &[f64], initial: f64) -> Vec<f64> {
    assert_eq!(theta.len(), opacity.len(), "samples must share a grid");
    let mut rho = Vec::with_capacity(theta.len());
    let mut acc = initial;
    rho.push(acc);
    for i in 0..theta.len().saturating_sub(1) {
        let x = opacity[i + 1] - opacity[i];
        let (a, c) = etd_weights(x);
        acc = (-x).exp() * acc - x * (theta[i] * c + theta[i + 1] * (a - c));
        rho.push(acc);
    }
    rho
}

/// Ground-state coherence for every column of `field`, starting from the
/// quasi-stationary value `-theta` at the first grid point.
pub fn coherence_dynamics(
    field: &SolutionField,
    coupling: &CouplingProfile,
    medium: &MediumParams,
) -> Result<SolutionField> {
    if field.grid.len() != field.omega_c.len() {
        return Err(invalid("field", "grid and coupling samples disagree"));
    }
    let rates = field
        .grid
        .times()
        .into_iter()
        .map(|t| gamma1_of_t(medium, coupling, t, Gamma1Model::UpperLevelOnly).map(|g| g.value))
        .collect::<Result<Vec<_>>>()?;
    let opacity = CumulativeIntegral::new(field.grid, rates);
    let mut out = field.clone();
    for col in &mut out.columns {
        let start = col.theta.first().copied().unwrap_or(0.0);
        col.rho21 = Some(coherence_column(&col.theta, opacity.prefix(), -start));
    }
    Ok(out)
}
