//! Scenario configuration: a TOML document with one section per ingredient.
//!
//! A config may name a `preset`; its sections are then merged key by key over
//! the preset's, so a file only needs the keys it changes.

use std::path::{Path, PathBuf};

use eitprop::oracle::{BlochOptions, PropagationGrid, MAX_DEPTH_STEP};
use eitprop::physics::{CouplingProfile, MediumParams, ProbeEnvelope, Scenario, TimeGrid};
use eitprop::solver::{Method, Quadrature, SolverOptions};
use eitprop::Execution;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::presets;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    pub medium: MediumParams,
    pub probe: ProbeEnvelope,
    pub coupling: CouplingProfile,
    pub grid: TimeGrid,
    pub run: RunSpec,
    #[serde(default)]
    pub output: OutputSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub z: Vec<f64>,
    #[serde(default)]
    pub methods: Vec<Method>,
    #[serde(default)]
    pub execution: Execution,
    /// Retrieval window start for the storage fidelity, if wanted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub storage_window: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSpec {
    pub dir: PathBuf,
    /// Header of the time column.
    pub time_label: String,
    /// Multiplies `Gamma t` before it is written.
    pub time_scale: f64,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            dir: PathBuf::from("out"),
            time_label: "Gamma_t".into(),
            time_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub resolution: f64,
    pub resolution_check: bool,
    pub quadrature: Quadrature,
    pub max_depth_step: f64,
    pub max_substep: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let solver = SolverOptions::default();
        Self {
            resolution: solver.resolution_tolerance,
            resolution_check: solver.resolution_check,
            quadrature: solver.quadrature,
            max_depth_step: MAX_DEPTH_STEP,
            max_substep: BlochOptions::default().max_substep,
        }
    }
}

/// Runs the scenario once per value, with the dotted `key` set to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub key: String,
    pub values: Vec<f64>,
}

impl ScenarioConfig {
    pub fn scenario(&self) -> Result<Scenario, CliError> {
        Scenario::new(
            self.medium,
            self.probe.clone(),
            self.coupling.clone(),
            self.grid,
        )
        .map_err(CliError::config)
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            execution: self.run.execution,
            quadrature: self.tolerances.quadrature,
            resolution_tolerance: self.tolerances.resolution,
            resolution_check: self.tolerances.resolution_check,
        }
    }

    pub fn propagation_grid(&self) -> Result<PropagationGrid, CliError> {
        PropagationGrid::new(self.run.z.clone(), self.tolerances.max_depth_step).map_err(CliError::config)
    }

    pub fn bloch_options(&self) -> BlochOptions {
        BlochOptions {
            max_substep: self.tolerances.max_substep,
        }
    }

    /// Checks everything that can be checked without solving.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.name.is_empty()
            || !self
                .name
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            return Err(CliError::Config(format!(
                "key `name`: {:?} must be non-empty and use only [A-Za-z0-9_-]",
                self.name
            )));
        }
        if let Some(p) = &self.preset {
            if presets::preset(p).is_none() {
                return Err(CliError::Config(format!("key `preset`: unknown preset {p:?}")));
            }
        }
        self.scenario()?;
        self.propagation_grid()?;
        let t = &self.tolerances;
        if !(t.resolution.is_finite() && t.resolution > 0.0) {
            return Err(CliError::Config("key `tolerances.resolution`: must be finite and > 0".into()));
        }
        if !(t.max_substep.is_finite() && t.max_substep > 0.0) {
            return Err(CliError::Config("key `tolerances.max_substep`: must be finite and > 0".into()));
        }
        if !(self.output.time_scale.is_finite() && self.output.time_scale > 0.0) {
            return Err(CliError::Config("key `output.time_scale`: must be finite and > 0".into()));
        }
        if let Some(w) = self.run.storage_window {
            if !(self.grid.t_min..self.grid.t_max).contains(&w) {
                return Err(CliError::Config(
                    "key `run.storage_window`: must lie inside the grid".into(),
                ));
            }
        }
        let mut seen = Vec::new();
        for m in &self.run.methods {
            if seen.contains(m) {
                return Err(CliError::Config(format!("key `run.methods`: {m} listed twice")));
            }
            seen.push(*m);
        }
        if let Some(sweep) = &self.sweep {
            if sweep.values.is_empty() {
                return Err(CliError::Config("key `sweep.values`: must not be empty".into()));
            }
            for v in self.variants()? {
                v.1.validate()?;
            }
        }
        Ok(())
    }

    /// One config per sweep value (or just this one), labelled for output.
    pub fn variants(&self) -> Result<Vec<(Option<SweepPoint>, ScenarioConfig)>, CliError> {
        let Some(sweep) = &self.sweep else {
            return Ok(vec![(None, self.clone())]);
        };
        let mut base = self.clone();
        base.sweep = None;
        let table = to_table(&base)?;
        sweep
            .values
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                let mut t = table.clone();
                set_path(&mut t, &sweep.key, toml::Value::Float(value))?;
                let mut cfg = from_table(t)?;
                cfg.output.dir = base.output.dir.join(format!("sweep_{index}"));
                let point = SweepPoint {
                    key: sweep.key.clone(),
                    value,
                    index,
                };
                Ok((Some(point), cfg))
            })
            .collect()
    }

    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub key: String,
    pub value: f64,
    pub index: usize,
}

/// Overrides taken from the command line; they win over the file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub preset: Option<String>,
    pub out: Option<PathBuf>,
    pub methods: Option<Vec<Method>>,
}

pub fn parse_methods(list: &str) -> Result<Vec<Method>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            Method::from_name(s).ok_or_else(|| {
                let known: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
                CliError::Config(format!("--methods: unknown method {s:?} (known: {})", known.join(", ")))
            })
        })
        .collect()
}

/// Parses config text. Without a preset, errors carry the line and key.
pub fn parse(text: &str, overrides: &Overrides) -> Result<ScenarioConfig, CliError> {
    let mut table: toml::Table = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(p) = &overrides.preset {
        table.insert("preset".into(), toml::Value::String(p.clone()));
    }
    let mut config = match table.get("preset") {
        Some(toml::Value::String(name)) => {
            let base = presets::preset(name)
                .ok_or_else(|| CliError::Config(format!("key `preset`: unknown preset {name:?}")))?;
            let mut merged = to_table(&base)?;
            merge(&mut merged, table);
            from_table(merged)?
        }
        Some(_) => return Err(CliError::Config("key `preset`: must be a string".into())),
        // Straight from the text so that diagnostics keep their spans.
        None => toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?,
    };
    apply(&mut config, overrides);
    config.validate()?;
    Ok(config)
}

pub fn load(path: &Path, overrides: &Overrides) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse(&text, overrides).map_err(|e| match e {
        CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// A preset on its own, with command-line overrides.
pub fn from_preset(name: &str, overrides: &Overrides) -> Result<ScenarioConfig, CliError> {
    let mut config =
        presets::preset(name).ok_or_else(|| CliError::Config(format!("unknown preset {name:?}")))?;
    apply(&mut config, overrides);
    config.validate()?;
    Ok(config)
}

fn apply(config: &mut ScenarioConfig, overrides: &Overrides) {
    if let Some(dir) = &overrides.out {
        config.output.dir = dir.clone();
    }
    if let Some(methods) = &overrides.methods {
        config.run.methods = methods.clone();
    }
}

fn to_table(config: &ScenarioConfig) -> Result<toml::Table, CliError> {
    toml::Table::try_from(config).map_err(|e| CliError::Config(e.to_string()))
}

fn from_table(table: toml::Table) -> Result<ScenarioConfig, CliError> {
    table.try_into().map_err(|e: toml::de::Error| CliError::Config(e.to_string()))
}

/// Tables merge recursively; anything else in `over` replaces `base`. A
/// tagged table whose `kind` changes replaces the whole table, since the
/// variants share no fields.
fn merge(base: &mut toml::Table, over: toml::Table) {
    for (key, value) in over {
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) if b.get("kind") == o.get("kind") || !o.contains_key("kind") => {
                merge(b, o)
            }
            (_, v) => {
                base.insert(key, v);
            }
        }
    }
}

fn set_path(table: &mut toml::Table, path: &str, value: toml::Value) -> Result<(), CliError> {
    let missing = || CliError::Config(format!("key `sweep.key`: {path:?} does not name a config value"));
    let mut parts: Vec<&str> = path.split('.').collect();
    let last = parts.pop().ok_or_else(missing)?;
    let mut t = table;
    for p in parts {
        t = t.get_mut(p).and_then(toml::Value::as_table_mut).ok_or_else(missing)?;
    }
    match t.get(last) {
        Some(toml::Value::Float(_)) | Some(toml::Value::Integer(_)) => {
            t.insert(last.to_string(), value);
            Ok(())
        }
        _ => Err(missing()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected_with_location() {
        let mut text = presets::preset("fig2a").unwrap().to_toml().unwrap();
        text = text.replace("[grid]", "[grid]\nspacing = 3");
        let err = parse(&text, &Overrides::default()).unwrap_err().to_string();
        assert!(err.contains("spacing"), "{err}");
        assert!(err.contains("line"), "{err}");
    }

    #[test]
    fn preset_keys_can_be_overridden() {
        let text = "preset = \"fig2a\"\nname = \"mine\"\n[run]\nz = [2.0]\n[coupling]\namplitude = 0.5\n";
        let c = parse(text, &Overrides::default()).unwrap();
        assert_eq!(c.run.z, vec![2.0]);
        assert_eq!(c.coupling, CouplingProfile::Constant { amplitude: 0.5 });
        assert_eq!(c.grid, presets::preset("fig2a").unwrap().grid);
    }

    #[test]
    fn changing_kind_replaces_the_table() {
        let text = "preset = \"fig2a\"\n[coupling]\nkind = \"piecewise\"\nscale = 0.5\n";
        let c = parse(text, &Overrides::default()).unwrap();
        assert_eq!(c.coupling, CouplingProfile::Piecewise { scale: 0.5 });
    }

    #[test]
    fn flags_win_over_the_file() {
        let text = presets::preset("fig2a").unwrap().to_toml().unwrap();
        let o = Overrides {
            out: Some("elsewhere".into()),
            methods: Some(vec![]),
            ..Default::default()
        };
        let c = parse(&text, &o).unwrap();
        assert_eq!(c.output.dir, PathBuf::from("elsewhere"));
        assert!(c.run.methods.is_empty());
    }

    #[test]
    fn bad_values_name_their_key() {
        let text = "preset = \"fig2a\"\n[grid]\nn_points = 1\n";
        let err = parse(text, &Overrides::default()).unwrap_err().to_string();
        assert!(err.contains("n_points"), "{err}");
        assert!(parse("preset = \"nope\"", &Overrides::default()).is_err());
        assert!(parse_methods("full,warp").is_err());
    }

    #[test]
    fn sweep_sets_the_key() {
        let c = presets::preset("fig4").unwrap();
        let v = c.variants().unwrap();
        assert!(v.len() > 1);
        for (point, cfg) in &v {
            let p = point.as_ref().unwrap();
            assert_eq!(cfg.coupling, CouplingProfile::Constant { amplitude: p.value });
            assert!(cfg.sweep.is_none());
        }
        let mut bad = c.clone();
        bad.sweep.as_mut().unwrap().key = "coupling.nothing".into();
        assert!(bad.validate().is_err());
    }
}
