#![allow(dead_code)]

use eitprop::physics::{
    CouplingProfile, Lobe, MediumParams, ProbeEnvelope, ProbeShape, Scenario, TimeGrid,
};

pub fn double_hump() -> ProbeShape {
    ProbeShape::DoubleGaussian {
        first: Lobe::new(0.012, 750.0, 100.0),
        second: Lobe::new(0.01, 1000.0, 100.0),
    }
}

/// Double-humped probe under constant coupling with `Gamma_1 T = 40`.
pub fn fig2(n: usize) -> Scenario {
    Scenario::new(
        MediumParams::default(),
        ProbeEnvelope::field(double_hump()),
        CouplingProfile::Constant {
            amplitude: 0.4f64.sqrt(),
        },
        TimeGrid::new(0.0, 2047.5, n).unwrap(),
    )
    .unwrap()
}

pub fn storage(scale: f64) -> Scenario {
    Scenario::new(
        MediumParams::default(),
        ProbeEnvelope::field(double_hump()),
        CouplingProfile::Piecewise { scale },
        TimeGrid::new(0.0, 5000.0, 4097).unwrap(),
    )
    .unwrap()
}

/// Gaussian mixing angle under constant coupling, small enough to be quick.
pub fn small(amplitude: f64, omega_c: f64, gamma: f64) -> Scenario {
    Scenario::new(
        MediumParams::new(1.0, gamma, 1.0).unwrap(),
        ProbeEnvelope::mixing_angle(ProbeShape::Gaussian {
            amplitude,
            center: 250.0,
            width: 50.0,
        }),
        CouplingProfile::Constant { amplitude: omega_c },
        TimeGrid::new(0.0, 800.0, 801).unwrap(),
    )
    .unwrap()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}
