//! Full quadrature solution for `theta(z, t)`.
//!
//! The response is a convolution of the boundary data with the Bessel
//! propagation kernel along the accumulated opacity `alpha(t1, t)`. The source
//! term `(theta0 Gamma1 + theta0') K` contains a total derivative, so by default
//! it is integrated by parts first:
//!
//! ```text
//! int (theta0 G1 + theta0') E K dt1
//!     = [theta0 E K]_{t_min}^{t} + int theta0 (G1 - gamma) E K1 dt1
//! ```
//!
//! with `E = exp(-gamma (t - t1))` and `K1` the flux kernel. The boundary term
//! at `t1 = t` is `theta0(t) exp(-z)`, which makes `theta(0, t) = theta0(t)`
//! hold to rounding instead of to quadrature error, and the remaining
//! integrand no longer contains `theta0'`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exec::{map_range, Execution};
use crate::physics::{Drive, Gamma1Model, ProbeShape, Scenario};
use crate::solver::field::{Column, Method, SolutionField};
use crate::special::{flux_kernel_with_decay, kernel_with_decay};
use crate::warning::Warning;

/// Kernel values below `exp(-NEGLIGIBLE_EXPONENT)` (about 1e-26 of the
/// kernel's maximum) are skipped.
const NEGLIGIBLE_EXPONENT: f64 = 60.0;

/// How the time integral is discretized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quadrature {
    /// Trapezoid on the integrated-by-parts form.
    #[default]
    ByParts,
    /// Trapezoid on the literal `(theta0 G1 + theta0') K` integrand.
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    pub execution: Execution,
    pub quadrature: Quadrature,
    /// Largest acceptable half-resolution error estimate, relative to
    /// `max |theta0|`.
    pub resolution_tolerance: f64,
    pub resolution_check: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            execution: Execution::Parallel,
            quadrature: Quadrature::ByParts,
            resolution_tolerance: 1e-3,
            resolution_check: true,
        }
    }
}

pub fn solve_full(scenario: &Scenario, z_values: &[f64]) -> Result<SolutionField> {
    solve_full_with(scenario, z_values, &SolverOptions::default())
}

pub fn solve_full_with(
    scenario: &Scenario,
    z_values: &[f64],
    options: &SolverOptions,
) -> Result<SolutionField> {
    solve(
        scenario,
        z_values,
        options,
        Gamma1Model::UpperLevelOnly,
        Method::FullIntegral,
    )
}

/// Variant with ground-state dephasing: dephasing-aware `Gamma1`, opacity
/// accumulated from `Gamma1 - gamma`, and an extra `exp(-gamma (t - t1))`.
pub fn solve_full_gamma(scenario: &Scenario, z_values: &[f64]) -> Result<SolutionField> {
    solve_full_gamma_with(scenario, z_values, &SolverOptions::default())
}

pub fn solve_full_gamma_with(
    scenario: &Scenario,
    z_values: &[f64],
    options: &SolverOptions,
) -> Result<SolutionField> {
    solve(
        scenario,
        z_values,
        options,
        Gamma1Model::WithGroundDephasing,
        Method::FullIntegralGamma,
    )
}

pub(crate) fn check_depths(z_values: &[f64]) -> Result<()> {
    if z_values.iter().all(|z| z.is_finite() && *z >= 0.0) {
        Ok(())
    } else {
        Err(invalid("z", "depths must be finite and >= 0"))
    }
}

fn solve(
    scenario: &Scenario,
    z_values: &[f64],
    options: &SolverOptions,
    model: Gamma1Model,
    method: Method,
) -> Result<SolutionField> {
    check_depths(z_values)?;
    if matches!(scenario.probe.shape, ProbeShape::Constant { .. }) {
        return Err(invalid(
            "probe",
            "a constant probe has no switch-on; use the matched-pulse solution",
        ));
    }
    let drive = scenario.sample(model)?;
    let integrand = Integrand::new(&drive, options.quadrature);
    let n = drive.grid.len();

    let flat = map_range(options.execution, z_values.len() * n, |idx| {
        integrand.value(z_values[idx / n], idx % n, 1)
    });
    let columns: Vec<Column> = z_values
        .iter()
        .zip(flat.chunks(n))
        .map(|(&z, theta)| Column::theta_only(z, theta.to_vec()))
        .collect();

    let mut warnings = drive.warnings.clone();
    if !drive.is_counterintuitive() {
        warnings.push(Warning::NotCounterintuitive {
            theta_start: drive.theta0[0],
        });
    }
    if options.resolution_check {
        if let Some(w) = resolution_check(&integrand, &columns, options) {
            warnings.push(w);
        }
    }
    Ok(SolutionField {
        method,
        grid: drive.grid,
        columns,
        omega_c: drive.omega_c.clone(),
        warnings,
    })
}

/// Compares the deepest column against the same quadrature on every other
/// node; for a second-order rule the fine-grid error is about a third of the
/// difference.
fn resolution_check(
    integrand: &Integrand<'_>,
    columns: &[Column],
    options: &SolverOptions,
) -> Option<Warning> {
    let scale = integrand.drive.max_abs_theta0();
    let col = columns
        .iter()
        .filter(|c| c.z > 0.0)
        .max_by(|a, b| a.z.total_cmp(&b.z))?;
    if scale == 0.0 || col.theta.len() < 5 {
        return None;
    }
    let even: Vec<usize> = (0..col.theta.len()).step_by(2).collect();
    let coarse = map_range(options.execution, even.len(), |k| {
        integrand.value(col.z, even[k], 2)
    });
    let diff = even
        .iter()
        .zip(&coarse)
        .fold(0.0f64, |m, (&i, c)| m.max((col.theta[i] - c).abs()));
    let estimate = diff / 3.0 / scale;
    (estimate > options.resolution_tolerance).then_some(Warning::Resolution {
        z: col.z,
        estimate,
        tolerance: options.resolution_tolerance,
    })
}

struct Integrand<'a> {
    drive: &'a Drive,
    quadrature: Quadrature,
    source: Vec<f64>,
}

impl<'a> Integrand<'a> {
    fn new(drive: &'a Drive, quadrature: Quadrature) -> Self {
        let source = match quadrature {
            Quadrature::ByParts => drive
                .theta0
                .iter()
                .zip(&drive.gamma1)
                .map(|(th, g)| th * (g - drive.subtract))
                .collect(),
            Quadrature::Direct => drive
                .theta0
                .iter()
                .zip(&drive.gamma1)
                .zip(&drive.theta0_dot)
                .map(|((th, g), dth)| th * g + dth)
                .collect(),
        };
        Self {
            drive,
            quadrature,
            source,
        }
    }

    /// `theta(z, t_i)` from the nodes `0, stride, 2 stride, ..., i`; `i` must
    /// be a multiple of `stride`.
    fn value(&self, z: f64, i: usize, stride: usize) -> f64 {
        debug_assert_eq!(i % stride, 0);
        let prefix = self.drive.alpha.prefix();
        let dt = self.drive.grid.step();
        let gamma = self.drive.subtract;
        let a_i = prefix[i];
        let root_z = z.sqrt();
        let mut acc = 0.0;
        for j in (0..=i).step_by(stride) {
            let src = self.source[j];
            if src == 0.0 {
                continue;
            }
            let alpha = a_i - prefix[j];
            let decay = gamma * (i - j) as f64 * dt;
            if alpha > 0.0 {
                let gap = root_z - alpha.sqrt();
                if gap * gap + decay > NEGLIGIBLE_EXPONENT {
                    continue;
                }
            }
            let k = match self.quadrature {
                Quadrature::ByParts => flux_kernel_with_decay(z, alpha, decay),
                Quadrature::Direct => kernel_with_decay(z, alpha, decay),
            };
            let w = if j == 0 || j == i { 0.5 } else { 1.0 };
            acc += w * src * k;
        }
        acc *= stride as f64 * dt;
        if self.quadrature == Quadrature::ByParts {
            let th = &self.drive.theta0;
            acc += th[i] * (-z).exp();
            if th[0] != 0.0 {
                acc -= th[0] * kernel_with_decay(z, a_i, gamma * i as f64 * dt);
            }
        }
        acc
    }
}
