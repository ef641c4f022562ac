//! CSV fields and the JSON report.
//!
//! Numbers are written in their shortest round-trip form, and the report is
//! built from structs only, so identical inputs give identical bytes.

use std::fmt::Write as _;
use std::path::PathBuf;

use eitprop::regimes::RegimeReport;
use eitprop::solver::{Column, Method, SolutionField};
use eitprop::Warning;
use serde::Serialize;

use crate::config::{ScenarioConfig, SweepPoint};
use crate::error::CliError;
use crate::runner::{Computed, Discrepancy};

pub const REPORT_FILE: &str = "report.json";

pub fn csv_name(method: Method, z: f64) -> String {
    format!("{}_z{}.csv", method.name(), ryu::Buffer::new().format(z))
}

pub fn csv(field: &SolutionField, column: &Column, time_label: &str, time_scale: f64) -> String {
    let mut b = ryu::Buffer::new();
    let mut out = String::with_capacity(48 * column.theta.len());
    out.push_str(time_label);
    out.push_str(",theta");
    let with_fields = field.method.is_oracle();
    if with_fields {
        out.push_str(",Omega_p,rho21");
    }
    out.push('\n');
    for (i, &theta) in column.theta.iter().enumerate() {
        out.push_str(b.format(field.grid.time(i) * time_scale));
        out.push(',');
        out.push_str(b.format(theta));
        if with_fields {
            for v in [&column.omega_p, &column.rho21] {
                out.push(',');
                if let Some(v) = v {
                    out.push_str(b.format(v[i]));
                }
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct WarningEntry<'a> {
    message: String,
    #[serde(flatten)]
    detail: &'a Warning,
}

#[derive(Serialize)]
struct ColumnEntry {
    z: f64,
    file: String,
    max_abs_theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    storage_fidelity: Option<f64>,
}

#[derive(Serialize)]
struct MethodEntry<'a> {
    method: Method,
    warnings: Vec<WarningEntry<'a>>,
    columns: Vec<ColumnEntry>,
}

#[derive(Serialize)]
struct Report<'a> {
    name: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<&'a SweepPoint>,
    parameters: &'a ScenarioConfig,
    regimes: &'a [RegimeReport],
    methods: Vec<MethodEntry<'a>>,
    discrepancies: Vec<Discrepancy>,
}

pub fn report_json(c: &Computed) -> Result<String, CliError> {
    let mut methods = Vec::new();
    for f in &c.fields {
        let mut columns = Vec::new();
        for col in &f.columns {
            columns.push(ColumnEntry {
                z: col.z,
                file: csv_name(f.method, col.z),
                max_abs_theta: col.theta.iter().fold(0.0f64, |m, v| m.max(v.abs())),
                storage_fidelity: c.storage_fidelity(f, col.z)?,
            });
        }
        methods.push(MethodEntry {
            method: f.method,
            warnings: f
                .warnings
                .iter()
                .map(|w| WarningEntry {
                    message: w.to_string(),
                    detail: w,
                })
                .collect(),
            columns,
        });
    }
    let report = Report {
        name: &c.config.name,
        variant: c.point.as_ref(),
        parameters: &c.config,
        regimes: &c.regimes,
        methods,
        discrepancies: c.discrepancies(),
    };
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Solver(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

/// Writes one CSV per method and depth plus the report; returns the paths.
pub fn write(c: &Computed) -> Result<Vec<PathBuf>, CliError> {
    let dir = &c.config.output.dir;
    std::fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    let out = &c.config.output;
    for f in &c.fields {
        let mut seen = Vec::new();
        for col in &f.columns {
            let name = csv_name(f.method, col.z);
            if seen.contains(&name) {
                continue;
            }
            let path = dir.join(&name);
            std::fs::write(&path, csv(f, col, &out.time_label, out.time_scale))?;
            seen.push(name);
            files.push(path);
        }
    }
    let path = dir.join(REPORT_FILE);
    std::fs::write(&path, report_json(c)?)?;
    files.push(path);
    Ok(files)
}

/// Human-readable summary of a finished run.
pub fn summary(c: &Computed) -> String {
    let mut s = String::new();
    let label = match &c.point {
        Some(p) => format!("{} [{} = {}]", c.config.name, p.key, p.value),
        None => c.config.name.clone(),
    };
    let _ = writeln!(s, "{label}: {}", c.config.output.dir.display());
    for r in &c.regimes {
        let _ = writeln!(
            s,
            "  z = {}: Gamma_1m T = {:.3}, ratio = {:.3} (threshold {:.3}), z/(Gamma_1m T) = {:.3}",
            r.z, r.gamma1m_t, r.ratio_polariton, r.threshold_polariton, r.fitting_ratio
        );
    }
    for d in c.discrepancies() {
        let _ = writeln!(s, "  z = {}: {} vs {}: {:.3e} (Omega_p)", d.z, d.method, d.reference, d.relative_l2_omega_p);
    }
    for f in &c.fields {
        for col in &f.columns {
            if let Ok(Some(v)) = c.storage_fidelity(f, col.z) {
                let _ = writeln!(s, "  z = {}: {} storage fidelity {:.4}", col.z, f.method, v);
            }
        }
    }
    s
}
