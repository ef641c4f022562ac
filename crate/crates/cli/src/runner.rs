//! Solves every requested method for one config and writes the artifacts.

use std::path::PathBuf;

use eitprop::metrics::relative_l2;
use eitprop::oracle::{coherence_dynamics, oracle_mb_with, oracle_pde};
use eitprop::regimes::{classify, storage_fidelity, RegimeReport};
use eitprop::solver::{
    asymptote_blurring, asymptote_polariton, matched_pulse, solve_full_gamma_with, solve_full_with,
    Method, SolutionField,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ScenarioConfig, SweepPoint};
use crate::error::CliError;
use crate::output;

/// Everything computed for one scenario, before anything touches the disk.
pub struct Computed {
    pub point: Option<SweepPoint>,
    pub config: ScenarioConfig,
    pub regimes: Vec<RegimeReport>,
    pub fields: Vec<SolutionField>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Discrepancy {
    pub z: f64,
    pub method: Method,
    pub reference: Method,
    pub relative_l2_omega_p: f64,
}

pub fn solve_method(config: &ScenarioConfig, method: Method) -> Result<SolutionField, CliError> {
    let s = config.scenario()?;
    let z = &config.run.z;
    let fail = |e| CliError::solver(method, e);
    match method {
        Method::FullIntegral => solve_full_with(&s, z, &config.solver_options()).map_err(fail),
        Method::FullIntegralGamma => solve_full_gamma_with(&s, z, &config.solver_options()).map_err(fail),
        Method::PolaritonAsymptote => asymptote_polariton(&s, z).map_err(fail),
        Method::BlurringAsymptote => asymptote_blurring(&s, z).map_err(fail),
        Method::MatchedPulse => {
            let drive = s.sample(s.natural_model()).map_err(fail)?;
            let theta = drive.theta0[0];
            if drive.theta0.iter().any(|&t| t != theta) {
                return Err(CliError::Solver(format!(
                    "{method}: needs a time-independent boundary mixing angle"
                )));
            }
            matched_pulse(theta, z, s.grid, drive.omega_c).map_err(fail)
        }
        Method::OracleMb => {
            oracle_mb_with(&s, &config.propagation_grid()?, &config.bloch_options()).map_err(fail)
        }
        Method::OraclePde => {
            let f = oracle_pde(&s, &config.propagation_grid()?, s.natural_model()).map_err(fail)?;
            coherence_dynamics(&f, &s.coupling, &s.medium).map_err(fail)
        }
    }
}

pub fn compute(point: Option<SweepPoint>, config: ScenarioConfig) -> Result<Computed, CliError> {
    let s = config.scenario()?;
    let regimes = config
        .run
        .z
        .iter()
        .map(|&z| classify(&s, z).map_err(CliError::config))
        .collect::<Result<Vec<_>, _>>()?;
    let fields = config
        .run
        .methods
        .iter()
        .map(|&m| solve_method(&config, m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Computed {
        point,
        config,
        regimes,
        fields,
    })
}

impl Computed {
    /// Every other method against the full solution (with dephasing if that
    /// is the only one), column by column. Compared on the probe field, which
    /// stays defined where the coupling is off and the mixing angle is not.
    pub fn discrepancies(&self) -> Vec<Discrepancy> {
        let reference = [Method::FullIntegral, Method::FullIntegralGamma]
            .into_iter()
            .find_map(|m| self.fields.iter().find(|f| f.method == m));
        let Some(reference) = reference else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for f in self.fields.iter().filter(|f| f.method != reference.method) {
            for c in &f.columns {
                if let (Some(a), Some(r)) = (f.probe_field(c.z), reference.probe_field(c.z)) {
                    out.push(Discrepancy {
                        z: c.z,
                        method: f.method,
                        reference: reference.method,
                        relative_l2_omega_p: relative_l2(&a, &r),
                    });
                }
            }
        }
        out
    }

    pub fn storage_fidelity(&self, field: &SolutionField, z: f64) -> Result<Option<f64>, CliError> {
        let Some(window) = self.config.run.storage_window else {
            return Ok(None);
        };
        storage_fidelity(field, z, &self.config.probe, &self.config.coupling, window)
            .map(Some)
            .map_err(|e| CliError::solver(field.method, e))
    }
}

pub struct RunSummary {
    pub files: Vec<PathBuf>,
    pub computed: Vec<Computed>,
}

/// Runs every variant of `config` (in parallel) and writes CSVs and a JSON
/// report per variant.
pub fn run(config: &ScenarioConfig) -> Result<RunSummary, CliError> {
    config.validate()?;
    let computed = config
        .variants()?
        .into_par_iter()
        .map(|(point, cfg)| compute(point, cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let mut files = Vec::new();
    for c in &computed {
        files.extend(output::write(c)?);
    }
    Ok(RunSummary { files, computed })
}
