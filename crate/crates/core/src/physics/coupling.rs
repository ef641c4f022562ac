use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::physics::tabulated::Table;

/// Time dependence of the coupling Rabi frequency `Omega_c(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CouplingProfile {
    Constant {
        amplitude: f64,
    },
    /// `scale * f(t)` with the storage switching function: `f = 1` outside
    /// `[1000, 2500]`, and inside it `f = exp(-(t/100 - 10)^2) + exp(-(t/100 - 20)^2)`,
    /// a switch-off centred at 1000 followed by a retrieval pulse at 2000.
    Piecewise {
        #[serde(default = "unit")]
        scale: f64,
    },
    /// Constant until `t_off`, then `amplitude * exp(-rate (t - t_off))`.
    ExponentialSwitchOff {
        amplitude: f64,
        t_off: f64,
        rate: f64,
    },
    /// Uniformly sampled values, linearly interpolated, held constant past
    /// either end.
    Tabulated {
        t_start: f64,
        dt: f64,
        values: Vec<f64>,
    },
}

fn unit() -> f64 {
    1.0
}

/// Logarithmic derivative `Omega_c'/Omega_c`, possibly clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivative {
    pub value: f64,
    pub clamped: bool,
}

const SWITCH_START: f64 = 1000.0;
const SWITCH_END: f64 = 2500.0;

fn switch_terms(t: f64) -> [(f64, f64); 2] {
    [10.0, 20.0].map(|c| {
        let u = t / 100.0 - c;
        let g = (-u * u).exp();
        (g, -2.0 * u / 100.0 * g)
    })
}

/// The storage switching function and its derivative.
pub fn switching_function(t: f64) -> (f64, f64) {
    if (SWITCH_START..=SWITCH_END).contains(&t) {
        let [(g1, d1), (g2, d2)] = switch_terms(t);
        (g1 + g2, d1 + d2)
    } else {
        (1.0, 0.0)
    }
}

impl CouplingProfile {
    pub fn validate(&self) -> Result<()> {
        let finite_nonneg = |v: f64| v.is_finite() && v >= 0.0;
        match self {
            Self::Constant { amplitude } => {
                if !finite_nonneg(*amplitude) {
                    return Err(invalid("amplitude", "must be finite and >= 0"));
                }
            }
            Self::Piecewise { scale } => {
                if !finite_nonneg(*scale) {
                    return Err(invalid("scale", "must be finite and >= 0"));
                }
            }
            Self::ExponentialSwitchOff {
                amplitude,
                t_off,
                rate,
            } => {
                if !finite_nonneg(*amplitude) || !t_off.is_finite() || !finite_nonneg(*rate) {
                    return Err(invalid(
                        "exponential_switch_off",
                        "amplitude and rate must be >= 0, t_off finite",
                    ));
                }
            }
            Self::Tabulated { t_start, dt, values } => {
                Table::check(*t_start, *dt, values)?;
                if values.iter().any(|v| *v < 0.0) {
                    return Err(invalid("values", "coupling amplitudes must be >= 0"));
                }
            }
        }
        Ok(())
    }

    /// `Omega_c(t)` in units of the upper-level width.
    pub fn omega(&self, t: f64) -> f64 {
        self.omega_and_derivative(t).0
    }

    /// `Omega_c(t)` and `dOmega_c/dt`.
    pub fn omega_and_derivative(&self, t: f64) -> (f64, f64) {
        match self {
            Self::Constant { amplitude } => (*amplitude, 0.0),
            Self::Piecewise { scale } => {
                let (f, df) = switching_function(t);
                (scale * f, scale * df)
            }
            Self::ExponentialSwitchOff {
                amplitude,
                t_off,
                rate,
            } => {
                if t < *t_off {
                    (*amplitude, 0.0)
                } else {
                    let v = amplitude * (-rate * (t - t_off)).exp();
                    (v, -rate * v)
                }
            }
            Self::Tabulated { t_start, dt, values } => {
                let table = Table::new(*t_start, *dt, values);
                table.value_and_derivative(t, true)
            }
        }
    }

    /// `Omega_c'/Omega_c` at `t`, clamped to `±clamp`.
    ///
    /// Analytic profiles return the exact ratio; the switch-off profile keeps
    /// `-rate` even where `Omega_c` has underflowed. Tabulated profiles fall
    /// back to the finite-difference ratio and flag any clamping.
    pub fn log_derivative(&self, t: f64, clamp: f64) -> Result<LogDerivative> {
        let exact = |value: f64| LogDerivative {
            value,
            clamped: false,
        };
        match self {
            Self::Constant { amplitude } => {
                if *amplitude == 0.0 {
                    Err(Error::SingularLogDerivative { t })
                } else {
                    Ok(exact(0.0))
                }
            }
            Self::Piecewise { scale } => {
                if *scale == 0.0 {
                    return Err(Error::SingularLogDerivative { t });
                }
                if !(SWITCH_START..=SWITCH_END).contains(&t) {
                    return Ok(exact(0.0));
                }
                let [(g1, d1), (g2, d2)] = switch_terms(t);
                Ok(exact((d1 + d2) / (g1 + g2)))
            }
            Self::ExponentialSwitchOff {
                amplitude, t_off, rate, ..
            } => {
                if *amplitude == 0.0 {
                    Err(Error::SingularLogDerivative { t })
                } else if t < *t_off {
                    Ok(exact(0.0))
                } else {
                    Ok(exact(-rate))
                }
            }
            Self::Tabulated { .. } => {
                let (v, dv) = self.omega_and_derivative(t);
                if v == 0.0 && dv == 0.0 {
                    return Err(Error::SingularLogDerivative { t });
                }
                let ratio = if v == 0.0 {
                    dv.signum() * f64::INFINITY
                } else {
                    dv / v
                };
                if ratio.abs() > clamp {
                    Ok(LogDerivative {
                        value: ratio.signum() * clamp,
                        clamped: true,
                    })
                } else {
                    Ok(exact(ratio))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switching_function_matches_definition() {
        assert_eq!(switching_function(999.9), (1.0, 0.0));
        assert_eq!(switching_function(2500.1), (1.0, 0.0));
        let t = 1234.0;
        let expected = (-(t / 100.0 - 10.0f64).powi(2)).exp() + (-(t / 100.0 - 20.0f64).powi(2)).exp();
        assert_eq!(switching_function(t).0, expected);
        // Left edge is continuous to within exp(-100).
        assert!((switching_function(1000.0).0 - 1.0).abs() < 1e-40);
        // Right edge: the literal definition jumps from exp(-25) back to 1.
        assert!((switching_function(2500.0).0 - (-25.0f64).exp()).abs() < 1e-20);
    }

    #[test]
    fn switching_derivative_matches_finite_difference() {
        for &t in &[1050.0, 1400.0, 1900.0, 2222.0] {
            let h = 1e-4;
            let fd = (switching_function(t + h).0 - switching_function(t - h).0) / (2.0 * h);
            let (_, d) = switching_function(t);
            assert!((fd - d).abs() <= 1e-7 * d.abs().max(1e-12), "{t}");
        }
    }

    #[test]
    fn switch_off_log_derivative_is_exact() {
        let c = CouplingProfile::ExponentialSwitchOff {
            amplitude: 1.0,
            t_off: 10.0,
            rate: 1.0,
        };
        assert_eq!(c.log_derivative(5.0, 1e3).unwrap().value, 0.0);
        assert_eq!(c.log_derivative(2000.0, 1e3).unwrap().value, -1.0);
        assert_eq!(c.omega(2000.0), 0.0);
    }

    #[test]
    fn tabulated_log_derivative_clamps_at_zero() {
        let c = CouplingProfile::Tabulated {
            t_start: 0.0,
            dt: 1.0,
            values: vec![0.0, 0.0, 0.0, 1.0, 2.0, 3.0, 3.0, 3.0],
        };
        // Flat zero region: undefined.
        assert!(matches!(
            c.log_derivative(0.5, 1e3),
            Err(Error::SingularLogDerivative { .. })
        ));
        let ld = c.log_derivative(3.0, 0.5).unwrap();
        assert!(ld.clamped);
        assert_eq!(ld.value, 0.5);
        let ld = c.log_derivative(4.0, 1e3).unwrap();
        assert!(!ld.clamped);
    }

    #[test]
    fn zero_constant_has_no_log_derivative() {
        let c = CouplingProfile::Constant { amplitude: 0.0 };
        assert!(c.log_derivative(0.0, 1e3).is_err());
    }

    #[test]
    fn parses_from_toml_like_tags() {
        let c = CouplingProfile::Piecewise { scale: 0.5 };
        c.validate().unwrap();
        let bad = CouplingProfile::Constant { amplitude: -1.0 };
        assert!(bad.validate().is_err());
    }
}
