//! Direct numerical integrators used as independent references for the
//! closed-form solution.

mod bloch;
mod coherence;
mod pde;

pub use bloch::{oracle_mb, oracle_mb_with, BlochOptions};
pub use coherence::{coherence_column, coherence_dynamics};
pub use pde::oracle_pde;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest depth step accepted by the marching oracles.
pub const MAX_DEPTH_STEP: f64 = 0.5;

/// Output depths and the largest step used to march between them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropagationGrid {
    pub z_values: Vec<f64>,
    #[serde(default = "default_step")]
    pub max_step: f64,
}

fn default_step() -> f64 {
    MAX_DEPTH_STEP
}

impl PropagationGrid {
    pub fn new(z_values: Vec<f64>, max_step: f64) -> Result<Self> {
        let g = Self { z_values, max_step };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.max_step > 0.0 && self.max_step <= MAX_DEPTH_STEP) {
            return Err(invalid("max_step", format!("must be in (0, {MAX_DEPTH_STEP}]")));
        }
        if !self.z_values.iter().all(|z| z.is_finite() && *z >= 0.0) {
            return Err(invalid("z", "depths must be finite and >= 0"));
        }
        Ok(())
    }

    /// Same output depths with the step halved.
    pub fn refined(&self) -> Self {
        Self {
            z_values: self.z_values.clone(),
            max_step: 0.5 * self.max_step,
        }
    }

    /// Sorted, deduplicated output depths.
    fn stops(&self) -> Vec<f64> {
        let mut z = self.z_values.clone();
        z.sort_by(f64::total_cmp);
        z.dedup();
        z
    }
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Marches `state` in depth with the explicit midpoint rule and returns the
/// state at every output depth (in the order given by the grid).
///
/// `norm` maps a state to a quantity that cannot grow in a passive medium;
/// growth beyond a small allowance means the depth step is unstable.
fn march<R, N>(pgrid: &PropagationGrid, initial: Vec<f64>, rhs: R, norm: N) -> Result<Vec<Vec<f64>>>
where
    R: Fn(&[f64]) -> Vec<f64>,
    N: Fn(&[f64]) -> f64,
{
    pgrid.validate()?;
    let stops = pgrid.stops();
    let reference = norm(&initial);
    let mut state = initial;
    let mut z = 0.0;
    let mut at_stops = Vec::with_capacity(stops.len());
    for &target in &stops {
        let span = target - z;
        let steps = (span / pgrid.max_step).ceil() as usize;
        if steps > 0 {
            let dz = span / steps as f64;
            for _ in 0..steps {
                let k1 = rhs(&state);
                let mid: Vec<f64> = state.iter().zip(&k1).map(|(s, k)| s + 0.5 * dz * k).collect();
                let k2 = rhs(&mid);
                for (s, k) in state.iter_mut().zip(&k2) {
                    *s += dz * k;
                }
                let current = norm(&state);
                if !current.is_finite() || current > 1.01 * reference + 1e-300 {
                    return Err(Error::StepSize {
                        dz,
                        suggested_dz: 0.5 * dz,
                    });
                }
            }
        }
        z = target;
        at_stops.push(state.clone());
    }
    Ok(pgrid
        .z_values
        .iter()
        .map(|z| {
            let k = stops.iter().position(|s| s == z).expect("stop present");
            at_stops[k].clone()
        })
        .collect())
}

/// `(1 - e^-x)/x` and `(1 - e^-x (1 + x))/x^2`: weights of the exact
/// exponential integral of a linear function over one cell. The left sample
/// gets `c`, the right sample `a - c`.
#[inline]
fn etd_weights(x: f64) -> (f64, f64) {
    if x.abs() < 0.1 {
        // a = sum (-x)^k/(k+1)!, c = sum (-x)^k/(k! (k+2))
        let mut a = 0.0;
        let mut c = 0.0;
        let mut p = 1.0;
        for k in 0..10 {
            let kf = k as f64;
            a += p / (kf + 1.0);
            c += p / (kf + 2.0);
            p *= -x / (kf + 1.0);
        }
        (a, c)
    } else {
        let e = (-x).exp();
        ((1.0 - e) / x, (1.0 - e * (1.0 + x)) / (x * x))
    }
}
