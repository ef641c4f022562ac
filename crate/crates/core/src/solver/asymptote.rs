//! Saddle-point limits of the full solution: polariton propagation when the
//! kernel is narrow compared with the probe, and shape-independent blurring
//! when it is wide.

use std::f64::consts::PI;

use crate::error::Result;
use crate::physics::{gamma1_of_t, Gamma1Model, Retarded, Scenario};
use crate::regimes::{max_gamma1, report};
use crate::solver::field::{Column, Method, SolutionField};
use crate::solver::full::check_depths;
use crate::warning::Warning;

/// Lower bound on `Gamma_1(xi)`, relative to its maximum, before the
/// correction term is clamped.
const GAMMA1_FLOOR: f64 = 1e-9;

fn regime_warnings(scenario: &Scenario, z_values: &[f64], polariton: bool) -> Result<Vec<Warning>> {
    let duration = scenario.duration();
    let g1t = max_gamma1(scenario)? * duration;
    let mut out = Vec::new();
    for &z in z_values {
        let r = report(z, duration, scenario.medium.gamma_upper * duration, g1t);
        let (name, c) = if polariton {
            ("polariton condition", r.conditions.polariton)
        } else {
            ("blurring condition", r.conditions.blurring)
        };
        if c.margin < 1.0 {
            out.push(Warning::RegimeViolated {
                condition: format!("{name} at z = {z}"),
                margin: c.margin,
            });
        }
    }
    Ok(out)
}

/// `theta0(xi) + theta0'(xi) / Gamma_1(xi)` along the nonlinear retarded time.
pub fn asymptote_polariton(scenario: &Scenario, z_values: &[f64]) -> Result<SolutionField> {
    check_depths(z_values)?;
    let drive = scenario.sample(Gamma1Model::UpperLevelOnly)?;
    let floor = GAMMA1_FLOOR * drive.max_gamma1();
    let bound = drive.max_abs_theta0();
    let times = drive.grid.times();
    let mut clamped = 0usize;
    let mut columns = Vec::with_capacity(z_values.len());
    for &z in z_values {
        let mut theta = Vec::with_capacity(times.len());
        for &t in &times {
            let Retarded::At(xi) = drive.alpha.retarded_time(t, z) else {
                theta.push(0.0);
                continue;
            };
            let b = scenario.probe.boundary(&scenario.coupling, xi);
            let g = gamma1_of_t(
                &scenario.medium,
                &scenario.coupling,
                xi,
                Gamma1Model::UpperLevelOnly,
            )?
            .value;
            let mut correction = if g > floor { b.theta_dot / g } else { 0.0 };
            if g <= floor && b.theta_dot != 0.0 || correction.abs() > bound {
                correction = correction.clamp(-bound, bound);
                clamped += 1;
            }
            theta.push(b.theta + correction);
        }
        columns.push(Column::theta_only(z, theta));
    }
    let mut warnings = drive.warnings.clone();
    if clamped > 0 {
        warnings.push(Warning::CorrectionClamped { samples: clamped });
    }
    warnings.extend(regime_warnings(scenario, z_values, true)?);
    Ok(SolutionField {
        method: Method::PolaritonAsymptote,
        grid: drive.grid,
        columns,
        omega_c: drive.omega_c,
        warnings,
    })
}

/// Where `theta0` peaks: grid argmax refined by a parabola through the
/// neighbouring samples.
pub fn peak_time(theta0: &[f64], t_min: f64, dt: f64) -> f64 {
    let (k, &peak) = theta0
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty grid");
    let mut offset = 0.0;
    if k > 0 && k + 1 < theta0.len() {
        let (l, r) = (theta0[k - 1], theta0[k + 1]);
        let curv = l - 2.0 * peak + r;
        if curv < 0.0 {
            offset = 0.5 * (l - r) / curv;
        }
    }
    t_min + (k as f64 + offset) * dt
}

/// `R exp(-(sqrt z - sqrt alpha)^2) (z alpha)^(-1/4) / (2 sqrt pi)` with
/// `alpha = alpha(t0, t)` measured from the peak of the boundary pulse.
///
/// The `1/(2 sqrt pi)` comes from the leading large-argument term of the
/// scaled Bessel function; it does not affect the shape.
pub fn asymptote_blurring(scenario: &Scenario, z_values: &[f64]) -> Result<SolutionField> {
    check_depths(z_values)?;
    let drive = scenario.sample(Gamma1Model::UpperLevelOnly)?;
    let grid = drive.grid;
    let dt = grid.step();
    let n = grid.len();
    let area: f64 = (0..n)
        .map(|i| {
            let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
            w * drive.gamma1[i] * drive.theta0[i]
        })
        .sum::<f64>()
        * dt;
    let t0 = peak_time(&drive.theta0, grid.t_min, dt);
    let alpha0 = drive.alpha.at(t0);
    let prefactor = area / (2.0 * PI.sqrt());
    let times = grid.times();
    let columns = z_values
        .iter()
        .map(|&z| {
            let theta = times
                .iter()
                .map(|&t| {
                    let alpha = if t > t0 { drive.alpha.at(t) - alpha0 } else { 0.0 };
                    if alpha <= 0.0 || z == 0.0 || area == 0.0 {
                        return 0.0;
                    }
                    let gap = z.sqrt() - alpha.sqrt();
                    prefactor * (-gap * gap).exp() * (z * alpha).powf(-0.25)
                })
                .collect();
            Column::theta_only(z, theta)
        })
        .collect();
    let mut warnings = drive.warnings.clone();
    warnings.extend(regime_warnings(scenario, z_values, false)?);
    Ok(SolutionField {
        method: Method::BlurringAsymptote,
        grid,
        columns,
        omega_c: drive.omega_c,
        warnings,
    })
}
