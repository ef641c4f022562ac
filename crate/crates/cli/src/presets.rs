//! Built-in scenarios for the figures of the reference discussion.

use std::path::PathBuf;

use eitprop::physics::{
    BoundaryQuantity, CouplingProfile, Lobe, MediumParams, ProbeEnvelope, ProbeShape, TimeGrid,
};
use eitprop::solver::Method;
use eitprop::Execution;

use crate::config::{OutputSpec, RunSpec, ScenarioConfig, Sweep, Tolerances};

pub struct PresetInfo {
    pub name: &'static str,
    pub description: &'static str,
    pub parameters: &'static str,
}

pub const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "fig2a",
        description: "double-humped probe, constant coupling, short depth: polariton regime",
        parameters: "Omega_p = 0.012 exp(-(t/100-7.5)^2) + 0.01 exp(-(t/100-10)^2), Gamma_1 T = 40, z = 4",
    },
    PresetInfo {
        name: "fig2b",
        description: "same probe at intermediate depth: upper-level width starts to smear",
        parameters: "as fig2a, z = 40",
    },
    PresetInfo {
        name: "fig2c",
        description: "same probe deep in the medium: strong smearing",
        parameters: "as fig2a, z = 400",
    },
    PresetInfo {
        name: "fig3a",
        description: "double-humped probe over a very long distance: shape forgotten",
        parameters: "fig2 probe, Gamma_1 T = 4, z = 400",
    },
    PresetInfo {
        name: "fig3b",
        description: "single Gaussian with the same area over the same distance",
        parameters: "Omega_p = 0.022 exp(-(t/100-8.5)^2), Gamma_1 T = 4, z = 400",
    },
    PresetInfo {
        name: "fig4",
        description: "fixed depth, coupling amplitude swept: stronger coupling smears less",
        parameters: "fig2 probe, z = 20, Gamma_1 T in {10, 40, 160}",
    },
    PresetInfo {
        name: "fig5",
        description: "storage and retrieval with a wide transparency window",
        parameters: "fig2 probe, Omega_c = f(t), z in {100, 800}",
    },
    PresetInfo {
        name: "fig6",
        description: "storage and retrieval with a narrow transparency window",
        parameters: "fig2 probe, Omega_c = f(t)/sqrt(10), z in {10, 100}; Gamma_1m T computed",
    },
    PresetInfo {
        name: "fig7b",
        description: "analytic storage curve for the experimental parameters (time in us)",
        parameters: "Omega_p = exp(-(t/400-10)^2) for t < 1000, exp(-(3t/100-10)^2) after; Omega_c = 0.1 f(t)",
    },
    PresetInfo {
        name: "matched",
        description: "matched pulses: constant mixing angle propagates unchanged",
        parameters: "theta_0 = 0.05, Omega_c = 1, z in {0, 10, 100, 1000}",
    },
    PresetInfo {
        name: "gammaV_cw",
        description: "ground-state dephasing with a quasi-CW probe: stationary absorption",
        parameters: "gamma = 0.01, Omega_c = 1, flat-top theta_0 = 0.01, z in {0, 25, 50, 75, 100}",
    },
    PresetInfo {
        name: "gammaV_stop",
        description: "coupling switched off at the rate Gamma: light stopped, coherence dephases",
        parameters: "gamma = 0.01, Omega_c = exp(-(t-500)) after t = 500, z in {50, 150}",
    },
];

pub fn names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|p| p.name)
}

fn double_hump() -> ProbeShape {
    ProbeShape::DoubleGaussian {
        first: Lobe::new(0.012, 750.0, 100.0),
        second: Lobe::new(0.01, 1000.0, 100.0),
    }
}

fn config(
    name: &str,
    medium: MediumParams,
    probe: ProbeEnvelope,
    coupling: CouplingProfile,
    grid: (f64, f64, usize),
    z: &[f64],
    methods: &[Method],
) -> ScenarioConfig {
    ScenarioConfig {
        name: name.into(),
        preset: None,
        medium,
        probe,
        coupling,
        grid: TimeGrid {
            t_min: grid.0,
            t_max: grid.1,
            n_points: grid.2,
        },
        run: RunSpec {
            z: z.to_vec(),
            methods: methods.to_vec(),
            execution: Execution::Parallel,
            storage_window: None,
        },
        output: OutputSpec {
            dir: PathBuf::from("out").join(name),
            ..OutputSpec::default()
        },
        tolerances: Tolerances::default(),
        sweep: None,
    }
}

// Grid long enough that the pulse leaves the window even at z = 400.
const FIG2_GRID: (f64, f64, usize) = (0.0, 3071.25, 4096);
/// Same span at the finer step the deep column needs.
const FIG2_DEEP_GRID: (f64, f64, usize) = (0.0, 3071.0, 6143);
const STORAGE_GRID: (f64, f64, usize) = (0.0, 5000.0, 4097);
const FIG3_GRID: (f64, f64, usize) = (0.0, 20000.0, 4001);
/// Retrieval starts where the switching function returns to one.
const RETRIEVAL_WINDOW: f64 = 2500.0;

pub fn preset(name: &str) -> Option<ScenarioConfig> {
    use Method::*;
    let natural = MediumParams::default;
    let fig2_coupling = CouplingProfile::Constant {
        amplitude: 0.4f64.sqrt(),
    };
    let fig2 = |name: &str, z: f64, methods: &[Method]| {
        config(
            name,
            natural(),
            ProbeEnvelope::field(double_hump()),
            fig2_coupling.clone(),
            FIG2_GRID,
            &[z],
            methods,
        )
    };
    let fig3 = |name: &str, shape: ProbeShape| {
        config(
            name,
            natural(),
            ProbeEnvelope::field(shape),
            CouplingProfile::Constant { amplitude: 0.2 },
            FIG3_GRID,
            &[400.0],
            &[FullIntegral, BlurringAsymptote],
        )
    };
    let storage = |name: &str, scale: f64, z: &[f64]| {
        let mut c = config(
            name,
            natural(),
            ProbeEnvelope::field(double_hump()),
            CouplingProfile::Piecewise { scale },
            STORAGE_GRID,
            z,
            &[FullIntegral, OraclePde],
        );
        c.run.storage_window = Some(RETRIEVAL_WINDOW);
        c
    };
    let dephasing = MediumParams {
        gamma_coherence: 0.01,
        ..natural()
    };
    let c = match name {
        "fig2a" => fig2(name, 4.0, &[FullIntegral, PolaritonAsymptote, OraclePde, OracleMb]),
        "fig2b" => fig2(name, 40.0, &[FullIntegral, OraclePde, OracleMb]),
        "fig2c" => {
            let mut c = fig2(name, 400.0, &[FullIntegral, BlurringAsymptote, OraclePde]);
            c.grid.t_max = FIG2_DEEP_GRID.1;
            c.grid.n_points = FIG2_DEEP_GRID.2;
            c
        }
        "fig3a" => fig3(name, double_hump()),
        "fig3b" => fig3(
            name,
            ProbeShape::Gaussian {
                amplitude: 0.022,
                center: 850.0,
                width: 100.0,
            },
        ),
        "fig4" => {
            let mut c = fig2(name, 20.0, &[FullIntegral, PolaritonAsymptote]);
            c.sweep = Some(Sweep {
                key: "coupling.amplitude".into(),
                values: vec![0.1f64.sqrt(), 0.4f64.sqrt(), 1.6f64.sqrt()],
            });
            c
        }
        "fig5" => storage(name, 1.0, &[100.0, 800.0]),
        "fig6" => storage(name, 0.1f64.sqrt(), &[10.0, 100.0]),
        "fig7b" => {
            let mut c = config(
                name,
                natural(),
                ProbeEnvelope::field(ProbeShape::SplitGaussian {
                    amplitude: 1.0,
                    split: 1000.0,
                    rise: Lobe::new(1.0, 4000.0, 400.0),
                    fall: Lobe::new(1.0, 100.0 / 0.3, 100.0 / 3.0),
                }),
                CouplingProfile::Piecewise { scale: 0.1 },
                STORAGE_GRID,
                &[10.0],
                &[FullIntegral],
            );
            c.run.storage_window = Some(RETRIEVAL_WINDOW);
            c.output.time_label = "t_us".into();
            c
        }
        "matched" => config(
            name,
            natural(),
            ProbeEnvelope::new(ProbeShape::Constant { value: 0.05 }, BoundaryQuantity::MixingAngle),
            CouplingProfile::Constant { amplitude: 1.0 },
            (0.0, 1000.0, 1001),
            &[0.0, 10.0, 100.0, 1000.0],
            &[MatchedPulse],
        ),
        "gammaV_cw" => config(
            name,
            dephasing,
            ProbeEnvelope::mixing_angle(ProbeShape::FlatTop {
                amplitude: 0.01,
                t_on: 500.0,
                t_off: 3500.0,
                edge: 50.0,
            }),
            CouplingProfile::Constant { amplitude: 1.0 },
            (0.0, 4000.0, 4001),
            &[0.0, 25.0, 50.0, 75.0, 100.0],
            &[FullIntegralGamma, OraclePde],
        ),
        "gammaV_stop" => config(
            name,
            dephasing,
            ProbeEnvelope::mixing_angle(ProbeShape::Gaussian {
                amplitude: 0.02,
                center: 300.0,
                width: 50.0,
            }),
            CouplingProfile::ExponentialSwitchOff {
                amplitude: 1.0,
                t_off: 500.0,
                rate: 1.0,
            },
            (0.0, 1100.0, 2201),
            &[50.0, 150.0],
            &[FullIntegralGamma, OraclePde, OracleMb],
        ),
        _ => return None,
    };
    Some(c)
}
