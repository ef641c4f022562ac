//! Acceptance criteria, one pass/fail line each.
//!
//! Every criterion runs even if an earlier one fails; the test fails at the
//! end if any did. Tolerances are pinned here and never adjusted to results.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use eitprop::metrics::{local_maxima, relative_l2, shape_distance};
use eitprop::oracle::{oracle_mb, oracle_pde, PropagationGrid};
use eitprop::physics::{gamma1_of_t, CouplingProfile, Gamma1Model, Scenario};
use eitprop::regimes::{classify, storage_fidelity};
use eitprop::solver::{
    asymptote_blurring, asymptote_polariton, matched_pulse, solve_full, solve_full_gamma,
};
use eitprop::special::{i0_scaled, kernel};
use eitprop_cli::presets;
use rand::{Rng, SeedableRng};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn scenario(name: &str) -> Scenario {
    presets::preset(name).unwrap().scenario().unwrap()
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn boundary_identity() -> Outcome {
    let s = scenario("fig2a");
    let start = Instant::now();
    let f = solve_full(&s, &[0.0]).unwrap();
    let took = start.elapsed();
    let d = s.sample(Gamma1Model::UpperLevelOnly).unwrap();
    let err = f.columns[0]
        .theta
        .iter()
        .zip(&d.theta0)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let rel = err / d.max_abs_theta0();
    outcome(
        s.grid.n_points == 4096 && rel <= 1e-6 && within(took, 1.0),
        format!("max err {rel:.2e} of max|theta0| (<= 1e-6), {:.2} s (< 1 s)", took.as_secs_f64()),
    )
}

fn oracle_equivalence() -> Outcome {
    let s = scenario("fig2a");
    let z = [4.0, 40.0];
    let start = Instant::now();
    let discrepancy = |s: &Scenario, step: f64| -> Vec<f64> {
        let full = solve_full(s, &z).unwrap();
        let pde = oracle_pde(
            s,
            &PropagationGrid::new(z.to_vec(), step).unwrap(),
            Gamma1Model::UpperLevelOnly,
        )
        .unwrap();
        (0..z.len())
            .map(|k| relative_l2(&pde.columns[k].theta, &full.columns[k].theta))
            .collect()
    };
    let coarse = discrepancy(&s, 0.5);
    let mut fine_s = s.clone();
    fine_s.grid = s.grid.refined();
    let fine = discrepancy(&fine_s, 0.25);
    let took = start.elapsed();
    let ratios: Vec<f64> = coarse.iter().zip(&fine).map(|(c, f)| c / f).collect();
    let pass = coarse.iter().all(|&d| d <= 1e-3) && ratios.iter().all(|&r| r >= 3.5) && within(took, 30.0);
    outcome(
        pass,
        format!(
            "L2 {:.2e}, {:.2e} (<= 1e-3); refinement ratios {:.2}, {:.2} (>= 3.5), {:.1} s (< 30 s)",
            coarse[0],
            coarse[1],
            ratios[0],
            ratios[1],
            took.as_secs_f64()
        ),
    )
}

fn model_error_bound() -> Outcome {
    let s = scenario("fig2a");
    let d = s.sample(Gamma1Model::UpperLevelOnly).unwrap();
    let omega_c_t = d.omega_c[0] * s.duration();
    let z = [4.0, 40.0];
    let start = Instant::now();
    let full = solve_full(&s, &z).unwrap();
    let mb = oracle_mb(&s, &PropagationGrid::new(z.to_vec(), 0.5).unwrap()).unwrap();
    let took = start.elapsed();
    let errs: Vec<f64> = (0..z.len())
        .map(|k| relative_l2(&mb.columns[k].theta, &full.columns[k].theta))
        .collect();
    let pass = omega_c_t >= 20.0
        && d.max_abs_theta0() <= 0.05
        && errs.iter().all(|&e| e <= 0.05)
        && within(took, 60.0);
    outcome(
        pass,
        format!(
            "Omega_c T = {omega_c_t:.1}, max|theta0| = {:.3}; L2 {:.2e}, {:.2e} (<= 5%), {:.1} s (< 60 s)",
            d.max_abs_theta0(),
            errs[0],
            errs[1],
            took.as_secs_f64()
        ),
    )
}

fn polariton_regime() -> Outcome {
    let s = scenario("fig2a");
    let margin = classify(&s, 4.0).unwrap().conditions.polariton.margin;
    let full = solve_full(&s, &[4.0]).unwrap();
    let pol = asymptote_polariton(&s, &[4.0]).unwrap();
    let err = relative_l2(&pol.columns[0].theta, &full.columns[0].theta);
    let humps = local_maxima(&full.columns[0].theta, 0.1).len();
    outcome(
        err <= 0.05 && humps == 2,
        format!("margin {margin:.2}; L2 {err:.2e} (<= 5%); {humps} local maxima (2)"),
    )
}

fn blurring_regime() -> Outcome {
    let (a, b) = (scenario("fig3a"), scenario("fig3b"));
    let area = |s: &Scenario| {
        let d = s.sample(Gamma1Model::UpperLevelOnly).unwrap();
        d.theta0.iter().zip(&d.gamma1).map(|(t, g)| t * g).sum::<f64>() * s.grid.step()
    };
    let (ra, rb) = (area(&a), area(&b));
    let r_diff = ((ra - rb) / ra).abs();
    let z = [400.0];
    let fa = solve_full(&a, &z).unwrap();
    let fb = solve_full(&b, &z).unwrap();
    let between = shape_distance(&fa.columns[0].theta, &fb.columns[0].theta);
    let to_blur: Vec<f64> = [(&a, &fa), (&b, &fb)]
        .iter()
        .map(|(s, f)| {
            let blur = asymptote_blurring(s, &z).unwrap();
            shape_distance(&blur.columns[0].theta, &f.columns[0].theta)
        })
        .collect();
    let g1t = classify(&a, 400.0).unwrap().gamma1m_t;
    let pass = r_diff <= 0.01 && between <= 0.02 && to_blur.iter().all(|&d| d <= 0.10);
    outcome(
        pass,
        format!(
            "Gamma_1 T = {g1t:.2}; areas differ {r_diff:.2e} (<= 1%); a-b {between:.2e} (<= 2%); vs blurring {:.2e}, {:.2e} (<= 10%)",
            to_blur[0], to_blur[1]
        ),
    )
}

fn storage_ordering() -> Outcome {
    let start = Instant::now();
    let run = |name: &str, z: f64| {
        let cfg = presets::preset(name).unwrap();
        let s = cfg.scenario().unwrap();
        let f = solve_full(&s, &[z]).unwrap();
        let report = classify(&s, z).unwrap();
        let fid = storage_fidelity(&f, z, &s.probe, &s.coupling, cfg.run.storage_window.unwrap()).unwrap();
        (fid, report)
    };
    let (good, r5) = run("fig5", 800.0);
    let (smeared, r6) = run("fig6", 100.0);
    let took = start.elapsed();
    let margins_ok = r5.conditions.fitting.margin >= 1.0 && r5.conditions.good_storage.margin >= 1.0;
    let pass = margins_ok && good > 0.9 && smeared < good && within(took, 60.0);
    outcome(
        pass,
        format!(
            "fig5 z=800 margins {:.2}, {:.2} (>= 1): F = {good:.4} (> 0.9); fig6 z=100 (Gamma_1m T = {:.1}): F = {smeared:.4} (< fig5), {:.1} s (< 60 s)",
            r5.conditions.fitting.margin,
            r5.conditions.good_storage.margin,
            r6.gamma1m_t,
            took.as_secs_f64()
        ),
    )
}

/// Least-squares slope of `-ln(theta(z) / theta(0))` against `z`.
fn fitted_rate(z: &[f64], theta: &[f64]) -> f64 {
    let y: Vec<f64> = theta.iter().map(|t| -(t / theta[0]).ln()).collect();
    let n = z.len() as f64;
    let (mz, my) = (z.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = z.iter().zip(&y).map(|(a, b)| (a - mz) * (b - my)).sum();
    let sxx: f64 = z.iter().map(|a| (a - mz).powi(2)).sum();
    sxy / sxx
}

fn stationary_absorption() -> Outcome {
    let cfg = presets::preset("gammaV_cw").unwrap();
    let s = cfg.scenario().unwrap();
    let z = cfg.run.z.clone();
    let d = s.sample(Gamma1Model::WithGroundDephasing).unwrap();
    let gamma = s.medium.gamma_coherence;
    let mid = s.grid.len() / 2 + s.grid.len() / 8;
    let expected = gamma / d.gamma1[mid];
    let full = solve_full_gamma(&s, &z).unwrap();
    let pde = oracle_pde(
        &s,
        &PropagationGrid::new(z.clone(), 0.5).unwrap(),
        Gamma1Model::WithGroundDephasing,
    )
    .unwrap();
    let rate = |f: &eitprop::solver::SolutionField| {
        let t: Vec<f64> = f.columns.iter().map(|c| c.theta[mid]).collect();
        (fitted_rate(&z, &t) - expected) / expected
    };
    let (ef, ep) = (rate(&full), rate(&pde));
    outcome(
        gamma == 0.01 && ef.abs() <= 0.02 && ep.abs() <= 0.02,
        format!(
            "gamma/Gamma_1 = {expected:.5}; fitted rate error full {ef:.2e}, pde {ep:.2e} (<= 2%) at t = {}",
            s.grid.time(mid)
        ),
    )
}

fn complete_stop() -> Outcome {
    let s = scenario("gammaV_stop");
    let CouplingProfile::ExponentialSwitchOff { t_off, rate, .. } = s.coupling else {
        return outcome(false, "preset coupling is not an exponential switch-off".into());
    };
    // Omega_c^2 has fallen below 1e-6 of its initial value by then.
    let after = t_off + (1e6f64).ln() / (2.0 * rate);
    let mut worst = 0.0f64;
    for t in s.grid.times().into_iter().filter(|&t| t >= after) {
        let g = gamma1_of_t(&s.medium, &s.coupling, t, Gamma1Model::WithGroundDephasing).unwrap();
        worst = worst.max(g.value.abs());
    }
    outcome(
        rate == s.medium.gamma_upper && worst <= 1e-6 * s.medium.gamma_upper,
        format!("switch-off rate {rate} Gamma; max |Gamma_1| after t = {after:.1}: {worst:.2e} (<= 1e-6)"),
    )
}

fn matched_pulses() -> Outcome {
    let cfg = presets::preset("matched").unwrap();
    let s = cfg.scenario().unwrap();
    let d = s.sample(Gamma1Model::UpperLevelOnly).unwrap();
    let z = cfg.run.z.clone();
    let m = matched_pulse(d.theta0[0], &z, s.grid, d.omega_c.clone()).unwrap();
    let pde = oracle_pde(&s, &PropagationGrid::new(z, 0.5).unwrap(), Gamma1Model::UpperLevelOnly).unwrap();
    let dev = |f: &eitprop::solver::SolutionField| {
        f.columns
            .iter()
            .flat_map(|c| c.theta.iter())
            .fold(0.0f64, |a, t| a.max((t - 0.05).abs()))
    };
    let (dm, dp) = (dev(&m), dev(&pde));
    outcome(
        d.theta0[0] == 0.05 && dm <= 1e-6 && dp <= 1e-6,
        format!("max |theta - 0.05| over z up to 1000: matched {dm:.1e}, pde oracle {dp:.1e} (<= 1e-6)"),
    )
}

fn special_functions() -> Outcome {
    let table = include_str!("../../core/tests/data/bessel_reference.csv");
    let (mut low, mut high) = (0.0f64, 0.0f64);
    for line in table.lines().filter(|l| !l.starts_with('#') && !l.starts_with('x')) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let rel = (i0_scaled(v[0]).unwrap() - v[1]).abs() / v[1];
        if v[0] <= 30.0 {
            low = low.max(rel);
        } else {
            high = high.max(rel);
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(20);
    let mut asym = 0.0f64;
    let zs: Vec<f64> = (0..100).map(|_| rng.random_range(0.0..2000.0)).collect();
    let alphas: Vec<f64> = (0..100).map(|_| rng.random_range(0.0..2000.0)).collect();
    for &z in &zs {
        for &a in &alphas {
            let (k1, k2) = (kernel(z, a).unwrap(), kernel(a, z).unwrap());
            if k1.max(k2) > 0.0 {
                asym = asym.max((k1 - k2).abs() / k1.max(k2));
            }
        }
    }
    outcome(
        low <= 1e-12 && high <= 1e-10 && asym <= 4.0 * f64::EPSILON,
        format!(
            "i0_scaled rel err {low:.1e} on [0,30] (<= 1e-12), {high:.1e} above (<= 1e-10); kernel asymmetry {asym:.1e} (<= 4 eps)"
        ),
    )
}

fn snapshot(root: &Path) -> Vec<(String, Vec<u8>)> {
    fn walk(dir: &Path, out: &mut Vec<std::path::PathBuf>) {
        for e in std::fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                walk(&p, out);
            } else {
                out.push(p);
            }
        }
    }
    let mut paths = Vec::new();
    walk(root, &mut paths);
    let mut v: Vec<_> = paths
        .into_iter()
        .map(|p| (p.strip_prefix(root).unwrap().display().to_string(), std::fs::read(&p).unwrap()))
        .collect();
    v.sort();
    v
}

fn determinism() -> Outcome {
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let mut slowest = 0.0f64;
    for dir in &dirs {
        let start = Instant::now();
        for name in presets::names() {
            let out = Command::new(env!("CARGO_BIN_EXE_eitprop"))
                .current_dir(dir.path())
                .args(["run", "--preset", name, "--out", &format!("out/{name}")])
                .output()
                .unwrap();
            if !out.status.success() {
                return outcome(false, format!("{name} failed: {}", String::from_utf8_lossy(&out.stderr)));
            }
        }
        slowest = slowest.max(start.elapsed().as_secs_f64());
    }
    let (a, b) = (snapshot(dirs[0].path()), snapshot(dirs[1].path()));
    let differing = a.iter().zip(&b).filter(|(x, y)| x != y).count() + a.len().abs_diff(b.len());
    outcome(
        differing == 0 && slowest < 300.0,
        format!("{} artifacts, {differing} differ; suite {slowest:.1} s (< 300 s)", a.len()),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("boundary identity", boundary_identity),
        ("oracle equivalence", oracle_equivalence),
        ("model-error bound", model_error_bound),
        ("polariton regime", polariton_regime),
        ("blurring regime", blurring_regime),
        ("storage/retrieval ordering", storage_ordering),
        ("stationary absorption with dephasing", stationary_absorption),
        ("complete stop", complete_stop),
        ("matched pulses", matched_pulses),
        ("special functions", special_functions),
        ("determinism", determinism),
    ];
    println!();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {}", i + 1, o.detail);
        if !o.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
