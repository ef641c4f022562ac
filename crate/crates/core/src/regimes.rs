//! Dimensionless regime conditions and storage quality.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::physics::{gamma1_of_t, CouplingProfile, ProbeEnvelope, Scenario};
use crate::solver::SolutionField;

/// `4 sqrt(ln 2)`: ratio `Gamma_1m T / sqrt(z)` at which the kernel width
/// matches the probe duration.
pub fn polariton_threshold() -> f64 {
    4.0 * std::f64::consts::LN_2.sqrt()
}

/// Margin factor at or above which a "much greater than" holds.
pub const SATISFIED_MARGIN: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Marginal,
    Violated,
}

impl Verdict {
    pub fn from_margin(margin: f64) -> Self {
        if margin >= SATISFIED_MARGIN {
            Self::Satisfied
        } else if margin >= 1.0 {
            Self::Marginal
        } else {
            Self::Violated
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Condition {
    pub margin: f64,
    pub verdict: Verdict,
}

impl Condition {
    fn new(margin: f64) -> Self {
        Self {
            margin,
            verdict: Verdict::from_margin(margin),
        }
    }
}

/// One entry per condition, keyed by what it protects.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Conditions {
    /// `Gamma T >> 1`: upper level follows adiabatically.
    pub upper_level_adiabatic: Condition,
    /// `Gamma_1 T >> 1`: EIT window wider than the probe spectrum.
    pub eit_width: Condition,
    /// `Gamma_1m T / sqrt(z) >> 4 sqrt(ln 2)`: polariton propagation.
    pub polariton: Condition,
    /// The reverse: shape information lost.
    pub blurring: Condition,
    /// `z >~ Gamma_1m T`: the whole pulse fits in the medium.
    pub fitting: Condition,
    /// `Gamma_1m T >> 16 ln 2`: storage both complete and faithful.
    pub good_storage: Condition,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub z: f64,
    pub duration: f64,
    pub t_definition: String,
    pub gamma_t: f64,
    pub gamma1m_t: f64,
    pub ratio_polariton: f64,
    pub threshold_polariton: f64,
    pub fitting_ratio: f64,
    pub storage_margin: f64,
    pub verdict_convention: String,
    pub conditions: Conditions,
}

/// Largest EIT width over the scenario grid, for the scenario's natural model.
pub fn max_gamma1(scenario: &Scenario) -> Result<f64> {
    let model = scenario.natural_model();
    let mut m = 0.0f64;
    for t in scenario.grid.times() {
        m = m.max(gamma1_of_t(&scenario.medium, &scenario.coupling, t, model)?.value);
    }
    Ok(m)
}

pub fn classify(scenario: &Scenario, z: f64) -> Result<RegimeReport> {
    if !(z.is_finite() && z >= 0.0) {
        return Err(invalid("z", "must be finite and >= 0"));
    }
    let duration = scenario.duration();
    let gamma1m_t = max_gamma1(scenario)? * duration;
    Ok(report(z, duration, scenario.medium.gamma_upper * duration, gamma1m_t))
}

/// Report from the two dimensionless inputs alone.
pub fn report(z: f64, duration: f64, gamma_t: f64, gamma1m_t: f64) -> RegimeReport {
    let threshold = polariton_threshold();
    let ratio_polariton = if z == 0.0 {
        f64::INFINITY
    } else {
        gamma1m_t / z.sqrt()
    };
    let fitting_ratio = if gamma1m_t > 0.0 {
        z / gamma1m_t
    } else {
        f64::INFINITY
    };
    let storage_margin = gamma1m_t / (16.0 * std::f64::consts::LN_2);
    let polariton = ratio_polariton / threshold;
    RegimeReport {
        z,
        duration,
        t_definition: "T = FWHM(theta0) / (2 sqrt(ln 2)); a Gaussian exp(-(t/T)^2) has duration T".into(),
        gamma_t,
        gamma1m_t,
        ratio_polariton,
        threshold_polariton: threshold,
        fitting_ratio,
        storage_margin,
        verdict_convention: format!(
            "satisfied if margin >= {SATISFIED_MARGIN}, marginal if >= 1, violated below"
        ),
        conditions: Conditions {
            upper_level_adiabatic: Condition::new(gamma_t),
            eit_width: Condition::new(gamma1m_t),
            polariton: Condition::new(polariton),
            blurring: Condition::new(1.0 / polariton),
            fitting: Condition::new(fitting_ratio),
            good_storage: Condition::new(storage_margin),
        },
    }
}

/// Delay-maximized normalized overlap of two sampled shapes on the same
/// uniform grid, in `[0, 1]`.
///
/// The correlation is scanned over every integer shift and the best one is
/// refined with a parabola through its neighbours.
pub fn fidelity(retrieved: &[f64], reference: &[f64]) -> f64 {
    let e_out: f64 = retrieved.iter().map(|v| v * v).sum();
    let e_ref: f64 = reference.iter().map(|v| v * v).sum();
    if e_out == 0.0 || e_ref == 0.0 {
        return 0.0;
    }
    let n = retrieved.len() as isize;
    let m = reference.len() as isize;
    // c(k) = sum_i out[i] ref[i - k]
    let corr = |k: isize| -> f64 {
        let lo = k.max(0);
        let hi = (m + k).min(n);
        (lo..hi)
            .map(|i| retrieved[i as usize] * reference[(i - k) as usize])
            .sum()
    };
    let shifts: Vec<isize> = (-(m - 1)..n).collect();
    let values: Vec<f64> = shifts.iter().map(|&k| corr(k)).collect();
    let (best, &peak) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty");
    let mut c = peak;
    if best > 0 && best + 1 < values.len() {
        let (l, r) = (values[best - 1], values[best + 1]);
        let curv = l - 2.0 * peak + r;
        if curv < 0.0 {
            let s = 0.5 * (l - r) / curv;
            c = peak - 0.25 * (l - r) * s;
        }
    }
    if c <= 0.0 {
        return 0.0;
    }
    (c * c / (e_out * e_ref)).min(1.0)
}

/// Fidelity of the probe field retrieved at depth `z` after `window_start`
/// against the probe field entering the medium.
pub fn storage_fidelity(
    field: &SolutionField,
    z: f64,
    reference: &ProbeEnvelope,
    coupling: &CouplingProfile,
    window_start: f64,
) -> Result<f64> {
    let out = field
        .probe_field(z)
        .ok_or_else(|| invalid("z", "depth not present in the field"))?;
    let times = field.grid.times();
    let retrieved: Vec<f64> = out
        .iter()
        .zip(&times)
        .map(|(v, &t)| if t >= window_start { *v } else { 0.0 })
        .collect();
    let input: Vec<f64> = times.iter().map(|&t| reference.probe_field(coupling, t)).collect();
    Ok(fidelity(&retrieved, &input))
}
