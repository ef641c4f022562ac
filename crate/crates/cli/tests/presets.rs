//! Physical properties of the figure presets, checked through the runner.

use eitprop::solver::Method;
use eitprop_cli::config::ScenarioConfig;
use eitprop_cli::presets::preset;
use eitprop_cli::runner::{compute, Computed};

fn computed(name: &str) -> Vec<Computed> {
    let cfg: ScenarioConfig = preset(name).unwrap();
    cfg.variants()
        .unwrap()
        .into_iter()
        .map(|(p, c)| compute(p, c).unwrap())
        .collect()
}

fn peak(c: &Computed, method: Method) -> f64 {
    let f = c.fields.iter().find(|f| f.method == method).unwrap();
    f.max_abs()
}

fn discrepancy(c: &Computed, method: Method) -> f64 {
    c.discrepancies()
        .into_iter()
        .find(|d| d.method == method)
        .unwrap()
        .relative_l2_omega_p
}

#[test]
fn fig2_smears_progressively_and_matches_the_oracle() {
    let peaks: Vec<f64> = ["fig2a", "fig2b", "fig2c"]
        .iter()
        .map(|n| peak(&computed(n)[0], Method::FullIntegral))
        .collect();
    assert!(peaks[0] > peaks[1] && peaks[1] > peaks[2], "{peaks:?}");
    for name in ["fig2a", "fig2b", "fig2c"] {
        let d = discrepancy(&computed(name)[0], Method::OraclePde);
        assert!(d <= 1e-3, "{name}: {d}");
    }
}

#[test]
fn fig4_stronger_coupling_stays_closer_to_the_polariton() {
    let runs = computed("fig4");
    let errs: Vec<f64> = runs
        .iter()
        .map(|c| discrepancy(c, Method::PolaritonAsymptote))
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    // The field boundary fixes Omega_p, so compare the probe field, not theta.
    let peaks: Vec<f64> = runs
        .iter()
        .map(|c| {
            let f = c.fields.iter().find(|f| f.method == Method::FullIntegral).unwrap();
            let p = f.probe_field(20.0).unwrap();
            p.iter().fold(0.0f64, |m, x| m.max(x.abs()))
        })
        .collect();
    assert!(peaks.windows(2).all(|w| w[1] > w[0]), "{peaks:?}");
}

#[test]
fn short_media_store_only_the_falling_edge() {
    for name in ["fig5", "fig6"] {
        let c = &computed(name)[0];
        let full = c.fields.iter().find(|f| f.method == Method::FullIntegral).unwrap();
        let zs = &c.config.run.z;
        let shallow = c.storage_fidelity(full, zs[0]).unwrap().unwrap();
        let deep = c.storage_fidelity(full, zs[1]).unwrap().unwrap();
        assert!(shallow < deep, "{name}: {shallow} vs {deep}");
        assert!(c.regimes[0].conditions.fitting.margin <= 1.0);
    }
}

#[test]
fn stopped_light_is_held_and_dephases() {
    let c = &computed("gammaV_stop")[0];
    let mb = c.fields.iter().find(|f| f.method == Method::OracleMb).unwrap();
    let col = mb.column(150.0).unwrap();
    let v = col.rho21.as_ref().unwrap();
    let times = mb.grid.times();
    let a = times.iter().position(|&t| t >= 600.0).unwrap();
    let b = times.iter().position(|&t| t >= 1000.0).unwrap();
    let expect = (-0.01 * (times[b] - times[a])).exp();
    assert!(v[a].abs() > 1e-4);
    assert!(((v[b] / v[a]) - expect).abs() < 1e-6, "{}", v[b] / v[a]);
    // Nothing leaves the medium while the coupling is off.
    let p = col.omega_p.as_ref().unwrap();
    assert!(p[a..].iter().all(|x| x.abs() < 1e-12));
}
