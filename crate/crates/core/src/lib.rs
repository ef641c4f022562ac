//! Propagation, storage and retrieval of a weak probe pulse in a three-level
//! medium under electromagnetically induced transparency.
//!
//! The mixing angle `theta = Omega_p / Omega_c` is obtained from a Bessel
//! kernel quadrature ([`solver::solve_full`]), from its asymptotic limits, or
//! from direct numerical integration of the underlying equations
//! ([`oracle`]), all in units of the upper-level width.

pub mod error;
pub mod exec;
pub mod metrics;
pub mod oracle;
pub mod physics;
pub mod regimes;
pub mod solver;
pub mod special;
pub mod warning;

pub use error::{Error, Result};
pub use exec::Execution;
pub use warning::Warning;
