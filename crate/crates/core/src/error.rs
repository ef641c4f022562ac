use thiserror::Error;

/// Errors raised by the physics, solver and oracle layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {value} is outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("invalid interval: t1 = {t1} is after t = {t}")]
    InvalidInterval { t1: f64, t: f64 },

    #[error("coupling log-derivative is undefined at t = {t} (Omega_c = 0)")]
    SingularLogDerivative { t: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("depth step {dz} is unstable, retry with dz <= {suggested_dz}")]
    StepSize { dz: f64, suggested_dz: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
