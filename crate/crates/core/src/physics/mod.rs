//! Medium parameters, field envelopes and the derived time-dependent rates.

mod coupling;
mod cumulative;
mod drive;
mod grid;
mod medium;
mod probe;
mod tabulated;

pub use coupling::{switching_function, CouplingProfile, LogDerivative};
pub use cumulative::{CumulativeIntegral, Retarded};
pub use drive::{Drive, Scenario};
pub use grid::TimeGrid;
pub use medium::MediumParams;
pub use probe::{main_lobe_fwhm, BoundaryQuantity, BoundaryValue, Lobe, ProbeEnvelope, ProbeShape};

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Largest `|Omega_c'/Omega_c|` accepted from tabulated couplings, in units
/// of the upper-level width.
pub const LOG_DERIVATIVE_CLAMP: f64 = 1e3;

/// Which expression for the EIT width `Gamma_1(t)` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gamma1Model {
    /// `Omega_c^2 / Gamma`, no ground-state dephasing.
    UpperLevelOnly,
    /// `(Omega_c^2 + gamma (Gamma + Omega_c'/Omega_c)) / (Gamma + gamma)`.
    WithGroundDephasing,
}

/// EIT width `Gamma_1` at one instant, with a flag when the coupling
/// log-derivative had to be clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gamma1 {
    pub value: f64,
    pub clamped: bool,
}

/// Coupling-induced coherence decay rate.
///
/// With `gamma_coherence = 0` both models give bit-identical results; the
/// log-derivative is not even evaluated in that case.
pub fn gamma1_of_t(
    medium: &MediumParams,
    coupling: &CouplingProfile,
    t: f64,
    model: Gamma1Model,
) -> Result<Gamma1> {
    let omega = coupling.omega(t);
    let gamma = medium.gamma_upper;
    let dephasing = medium.gamma_coherence;
    match model {
        Gamma1Model::UpperLevelOnly => Ok(Gamma1 {
            value: omega * omega / gamma,
            clamped: false,
        }),
        Gamma1Model::WithGroundDephasing if dephasing == 0.0 => Ok(Gamma1 {
            value: (omega * omega + 0.0) / (gamma + dephasing),
            clamped: false,
        }),
        Gamma1Model::WithGroundDephasing => {
            let ld = coupling.log_derivative(t, LOG_DERIVATIVE_CLAMP * gamma)?;
            Ok(Gamma1 {
                value: (omega * omega + dephasing * (gamma + ld.value)) / (gamma + dephasing),
                clamped: ld.clamped,
            })
        }
    }
}
