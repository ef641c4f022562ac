use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::physics::coupling::CouplingProfile;
use crate::physics::grid::TimeGrid;
use crate::physics::tabulated::Table;

/// A single Gaussian lobe `amplitude * exp(-((t - center)/width)^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lobe {
    #[serde(default = "unit")]
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

fn unit() -> f64 {
    1.0
}

impl Lobe {
    pub fn new(amplitude: f64, center: f64, width: f64) -> Self {
        Self {
            amplitude,
            center,
            width,
        }
    }

    #[inline]
    fn eval(&self, t: f64) -> (f64, f64) {
        let u = (t - self.center) / self.width;
        let v = self.amplitude * (-u * u).exp();
        (v, -2.0 * u / self.width * v)
    }

    fn check(&self) -> Result<()> {
        if !(self.amplitude.is_finite() && self.center.is_finite()) {
            return Err(invalid("lobe", "amplitude and center must be finite"));
        }
        if !(self.width.is_finite() && self.width > 0.0) {
            return Err(invalid("width", "must be finite and > 0"));
        }
        Ok(())
    }
}

/// Temporal shape of the probe envelope at the medium entrance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProbeShape {
    Gaussian {
        amplitude: f64,
        center: f64,
        width: f64,
    },
    DoubleGaussian {
        first: Lobe,
        second: Lobe,
    },
    /// `rise` lobe before `split`, `fall` lobe after it, both scaled by
    /// `amplitude`.
    SplitGaussian {
        #[serde(default = "unit")]
        amplitude: f64,
        split: f64,
        rise: Lobe,
        fall: Lobe,
    },
    /// Smooth plateau `amplitude/2 * (tanh((t - t_on)/edge) - tanh((t - t_off)/edge))`.
    FlatTop {
        amplitude: f64,
        t_on: f64,
        t_off: f64,
        edge: f64,
    },
    /// Time-independent value; only meaningful for matched pulses.
    Constant { value: f64 },
    /// Uniform samples, linearly interpolated, zero outside.
    Tabulated {
        t_start: f64,
        dt: f64,
        values: Vec<f64>,
    },
}

/// Which physical quantity the shape describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryQuantity {
    /// The probe Rabi frequency `Omega_p(0, t)`; the mixing angle follows
    /// by dividing by the coupling.
    #[default]
    ProbeField,
    /// The mixing angle `theta_0(t)` itself.
    MixingAngle,
}

/// Probe envelope at the entrance of the medium.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeEnvelope {
    pub shape: ProbeShape,
    #[serde(default)]
    pub boundary: BoundaryQuantity,
}

/// Boundary mixing angle and its time derivative at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryValue {
    pub theta: f64,
    pub theta_dot: f64,
    /// False where the coupling vanishes and the probe field does not, so
    /// the mixing angle had to be set to zero.
    pub defined: bool,
}

impl ProbeShape {
    fn eval(&self, t: f64) -> (f64, f64) {
        match self {
            Self::Gaussian {
                amplitude,
                center,
                width,
            } => Lobe::new(*amplitude, *center, *width).eval(t),
            Self::DoubleGaussian { first, second } => {
                let (a, da) = first.eval(t);
                let (b, db) = second.eval(t);
                (a + b, da + db)
            }
            Self::SplitGaussian {
                amplitude,
                split,
                rise,
                fall,
            } => {
                let (v, d) = if t < *split { rise.eval(t) } else { fall.eval(t) };
                (amplitude * v, amplitude * d)
            }
            Self::FlatTop {
                amplitude,
                t_on,
                t_off,
                edge,
            } => {
                // tanh(a) - tanh(b) = sinh(a - b) / (cosh a cosh b), written
                // with decaying exponentials only so the tails keep their
                // relative precision.
                let a = (t - t_on) / edge;
                let b = (t - t_off) / edge;
                let d = (t_off - t_on) / edge;
                let v = amplitude * (1.0 - (-2.0 * d).exp()) * (d - a.abs() - b.abs()).exp()
                    / ((1.0 + (-2.0 * a.abs()).exp()) * (1.0 + (-2.0 * b.abs()).exp()));
                (v, -v / edge * (a.tanh() + b.tanh()))
            }
            Self::Constant { value } => (*value, 0.0),
            Self::Tabulated { t_start, dt, values } => {
                Table::new(*t_start, *dt, values).value_and_derivative(t, false)
            }
        }
    }

    fn check(&self) -> Result<()> {
        match self {
            Self::Gaussian {
                amplitude,
                center,
                width,
            } => Lobe::new(*amplitude, *center, *width).check(),
            Self::DoubleGaussian { first, second } => {
                first.check()?;
                second.check()
            }
            Self::SplitGaussian {
                amplitude,
                split,
                rise,
                fall,
            } => {
                if !(amplitude.is_finite() && split.is_finite()) {
                    return Err(invalid("split_gaussian", "amplitude and split must be finite"));
                }
                rise.check()?;
                fall.check()
            }
            Self::FlatTop {
                amplitude,
                t_on,
                t_off,
                edge,
            } => {
                if !(amplitude.is_finite() && t_on.is_finite() && t_off.is_finite()) {
                    return Err(invalid("flat_top", "parameters must be finite"));
                }
                if t_off <= t_on {
                    return Err(invalid("t_off", "must be after t_on"));
                }
                if !(edge.is_finite() && *edge > 0.0) {
                    return Err(invalid("edge", "must be finite and > 0"));
                }
                Ok(())
            }
            Self::Constant { value } => {
                if value.is_finite() {
                    Ok(())
                } else {
                    Err(invalid("value", "must be finite"))
                }
            }
            Self::Tabulated { t_start, dt, values } => Table::check(*t_start, *dt, values),
        }
    }
}

impl ProbeEnvelope {
    pub fn new(shape: ProbeShape, boundary: BoundaryQuantity) -> Self {
        Self { shape, boundary }
    }

    /// Probe field shape given directly as `Omega_p(0, t)`.
    pub fn field(shape: ProbeShape) -> Self {
        Self::new(shape, BoundaryQuantity::ProbeField)
    }

    /// Mixing angle given directly as `theta_0(t)`.
    pub fn mixing_angle(shape: ProbeShape) -> Self {
        Self::new(shape, BoundaryQuantity::MixingAngle)
    }

    pub fn validate(&self) -> Result<()> {
        self.shape.check()
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.shape, ProbeShape::Constant { .. })
    }

    /// The envelope as given, with its time derivative.
    pub fn shape_value(&self, t: f64) -> (f64, f64) {
        self.shape.eval(t)
    }

    /// `theta_0(t)` and its derivative.
    pub fn boundary(&self, coupling: &CouplingProfile, t: f64) -> BoundaryValue {
        let (v, dv) = self.shape.eval(t);
        match self.boundary {
            BoundaryQuantity::MixingAngle => BoundaryValue {
                theta: v,
                theta_dot: dv,
                defined: true,
            },
            BoundaryQuantity::ProbeField => {
                let (omega, domega) = coupling.omega_and_derivative(t);
                if omega > 0.0 {
                    let theta = v / omega;
                    BoundaryValue {
                        theta,
                        theta_dot: (dv - theta * domega) / omega,
                        defined: true,
                    }
                } else {
                    BoundaryValue {
                        theta: 0.0,
                        theta_dot: 0.0,
                        defined: v == 0.0,
                    }
                }
            }
        }
    }

    /// Probe Rabi frequency at the entrance.
    pub fn probe_field(&self, coupling: &CouplingProfile, t: f64) -> f64 {
        let (v, _) = self.shape.eval(t);
        match self.boundary {
            BoundaryQuantity::ProbeField => v,
            BoundaryQuantity::MixingAngle => v * coupling.omega(t),
        }
    }

    /// Characteristic duration `T`, with the convention that a Gaussian
    /// `exp(-(t/T)^2)` has duration `T`, i.e. `T = FWHM / (2 sqrt(ln 2))`.
    ///
    /// Gaussian shapes use their width parameter (the dominant lobe for a
    /// double Gaussian); other shapes use the full width at half maximum of
    /// the main lobe sampled on `grid`.
    pub fn duration(&self, grid: &TimeGrid) -> f64 {
        let fwhm_factor = 2.0 * std::f64::consts::LN_2.sqrt();
        match &self.shape {
            ProbeShape::Gaussian { width, .. } => *width,
            ProbeShape::DoubleGaussian { first, second } => {
                if first.amplitude.abs() >= second.amplitude.abs() {
                    first.width
                } else {
                    second.width
                }
            }
            ProbeShape::FlatTop { t_on, t_off, .. } => (t_off - t_on) / fwhm_factor,
            ProbeShape::Constant { .. } => f64::INFINITY,
            _ => {
                let samples: Vec<f64> = grid.times().iter().map(|&t| self.shape.eval(t).0.abs()).collect();
                main_lobe_fwhm(&samples, grid.step()) / fwhm_factor
            }
        }
    }
}

/// Full width at half maximum of the lobe containing the global maximum,
/// with linear interpolation of the crossings.
pub fn main_lobe_fwhm(samples: &[f64], dt: f64) -> f64 {
    let Some((peak, &max)) = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
    else {
        return 0.0;
    };
    if max <= 0.0 {
        return 0.0;
    }
    let half = 0.5 * max;
    let mut left = 0.0;
    for i in (0..peak).rev() {
        if samples[i] < half {
            left = i as f64 + (half - samples[i]) / (samples[i + 1] - samples[i]);
            break;
        }
    }
    let mut right = (samples.len() - 1) as f64;
    for i in peak + 1..samples.len() {
        if samples[i] < half {
            right = (i - 1) as f64 + (samples[i - 1] - half) / (samples[i - 1] - samples[i]);
            break;
        }
    }
    (right - left) * dt
}
