//! The three subcommands, written against a [`RunConfig`] so they can be
//! driven from tests without a process boundary.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;
use tridot::dynamics::{lindblad_rhs, NoiseMode};
use tridot::gate::{
    analytic_fidelity, fig2_presets, gate_time, peak_in_window, run_scenario, FidelityTrajectory,
    GateError, GateScenario,
};
use tridot::model::{GateSetup, ModelError};
use tridot::oracle::{no_rwa_spot_check, verify_alpha_from_overlap, verify_effective_model, OracleError};
use tridot::tensorlab::{OperatorMatrix, Superoperator};

use crate::config::{ConfigError, RunConfig};
use crate::output::{fig2_script, scenario_echo, write_trajectory};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

pub fn setup_for(cfg: &RunConfig) -> Result<GateSetup, CliError> {
    Ok(GateSetup::with_ring_length(
        cfg.configuration,
        cfg.transition,
        &cfg.params,
        cfg.ring_length,
    )?)
}

/// The scenario `run` executes at one temperature.
pub fn scenario_for(cfg: &RunConfig, temperature: f64) -> Result<GateScenario, CliError> {
    let params = cfg.params.with_temperature(temperature);
    let setup = setup_for(cfg)?;
    let mut s = GateScenario::new(params, setup, cfg.noise)?;
    if let Some(t) = cfg.t_max {
        s.t_max = t;
    }
    if let Some(dt) = cfg.dt {
        s.dt = dt;
    }
    s.validate()?;
    Ok(s)
}

/// Output file for temperature `index`: the configured path itself for a
/// single temperature, `<stem>_T<k>K.<ext>` when there are several.
pub fn run_output_path(cfg: &RunConfig, temperature: f64) -> PathBuf {
    let base = cfg.output.clone().unwrap_or_else(|| PathBuf::from("tridot_run.csv"));
    if cfg.temperatures.len() <= 1 {
        return base;
    }
    let stem = base.file_stem().map_or("tridot_run".into(), |s| s.to_string_lossy().into_owned());
    let ext = base.extension().map_or("csv".into(), |s| s.to_string_lossy().into_owned());
    base.with_file_name(format!("{stem}_T{temperature}K.{ext}"))
}

fn write_csv(path: &Path, comments: &[String], traj: &FidelityTrajectory) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let file = fs::File::create(path).map_err(io_err(path))?;
    write_trajectory(io::BufWriter::new(file), comments, traj).map_err(io_err(path))
}

fn comments(cfg: &RunConfig, s: &GateScenario) -> Vec<String> {
    let mut c = vec!["tridot fidelity trajectory".to_owned()];
    c.extend(cfg.echo());
    c.extend(scenario_echo(s));
    c
}

/// Runs the configured scenario at each temperature; returns the files.
pub fn cmd_run(cfg: &RunConfig) -> Result<Vec<PathBuf>, CliError> {
    cfg.params.validate()?;
    let temps = if cfg.temperatures.is_empty() { vec![0.0] } else { cfg.temperatures.clone() };
    let mut written = Vec::new();
    for t in temps {
        let s = scenario_for(cfg, t)?;
        let traj = run_scenario(&s)?;
        let path = run_output_path(cfg, t);
        write_csv(&path, &comments(cfg, &s), &traj)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the fifteen preset trajectories and `fig2.gp` into `dir`.
pub fn cmd_fig2(cfg: &RunConfig, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    cfg.params.validate()?;
    let presets = fig2_presets(&cfg.params)?;
    let runs: Vec<FidelityTrajectory> = presets
        .par_iter()
        .map(|p| run_scenario(&p.scenario))
        .collect::<Result<_, _>>()?;
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();
    for (p, traj) in presets.iter().zip(&runs) {
        let path = dir.join(format!("{}.csv", p.stem()));
        let mut c = vec![format!("tridot figure preset, panel {}", p.panel.letter())];
        c.extend(
            cfg.echo()
                .into_iter()
                .filter(|l| !l.starts_with("temperatures") && !l.starts_with("output")),
        );
        c.extend(scenario_echo(&p.scenario));
        write_csv(&path, &c, traj)?;
        written.push(path);
    }
    let script = dir.join("fig2.gp");
    fs::write(&script, fig2_script(&presets)).map_err(io_err(&script))?;
    written.push(script);
    Ok(written)
}

/// One line of the verify report.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        pass,
        detail: detail.into(),
    }
}

fn random_hermitian(rng: &mut ChaCha8Rng, like: &OperatorMatrix) -> OperatorMatrix {
    OperatorMatrix::from_fn(like.basis(), |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .hermitian_part()
}

fn checks_for_setup(cfg: &RunConfig, setup: &GateSetup, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, CliError> {
    let params = &cfg.params;
    let name = setup.name();
    let tg = gate_time(params, setup)?;
    let mut out = Vec::new();

    let alpha = verify_alpha_from_overlap(setup);
    out.push(check(
        format!("{name}: character factor from overlap"),
        (alpha - setup.alpha).abs() <= 1e-12,
        format!("{alpha:.12} vs {:.12}", setup.alpha),
    ));

    let mut s = GateScenario::new(*params, *setup, NoiseMode::None)?;
    s.t_max = 2.0 * tg;
    let traj = run_scenario(&s)?;
    let dev = traj
        .times
        .iter()
        .zip(&traj.fidelity)
        .map(|(&t, f)| (f - analytic_fidelity(t, params, setup)).abs())
        .fold(0.0, f64::max);
    out.push(check(format!("{name}: noiseless vs analytic fidelity"), dev <= 1e-6, format!("max deviation {dev:.2e}")));
    let peak = peak_in_window(&traj.times, &traj.fidelity, 0.5 * tg, 1.5 * tg);
    let rel = peak.map_or(f64::INFINITY, |p| (p.time / tg - 1.0).abs());
    out.push(check(
        format!("{name}: first fidelity maximum at gate time"),
        rel <= 1e-3,
        format!("t_g = {tg:.4} ps, relative offset {rel:.2e}"),
    ));

    let r = verify_effective_model(params, setup, 2.0 * tg)?;
    out.push(check(
        format!("{name}: full-space fidelity deviation"),
        r.fidelity_deviation <= 0.02,
        format!("{:.4} (limit 0.02; spectator phase error up to {:.3} rad)", r.fidelity_deviation, r.spectator_phase_error),
    ));
    out.push(check(
        format!("{name}: full-space leakage"),
        r.leakage <= 0.01,
        format!("{:.4} (limit 0.01; multi-exciton {:.1e})", r.leakage, r.multi_exciton_population),
    ));
    out.push(check(
        format!("{name}: extracted character factor"),
        r.alpha_relative_error() <= 0.02,
        format!("{:.5} ({:.3}% off)", r.extracted_alpha, 100.0 * r.alpha_relative_error()),
    ));
    out.push(check(
        format!("{name}: full-space norm and spin sectors"),
        r.max_norm_error <= 1e-8 && r.sector_drift <= 1e-10,
        format!("norm {:.1e}, sector drift {:.1e}", r.max_norm_error, r.sector_drift),
    ));
    let rwa = no_rwa_spot_check(params, setup, 0.05, 2e-5)?;
    out.push(check(
        format!("{name}: rotating-wave spot check (0.05 ps)"),
        rwa.max_deviation <= 1e-3,
        format!("state deviation {:.1e}", rwa.max_deviation),
    ));

    for t in &cfg.temperatures {
        let p = params.with_temperature(*t);
        for mode in [NoiseMode::SpontaneousOnly, NoiseMode::Full] {
            let g = lindblad_rhs(&p, setup, mode).map_err(GateError::from)?;
            let worst = (0..20)
                .map(|_| {
                    let rho = random_hermitian(rng, g.hamiltonian());
                    g.apply(&rho).trace().norm() / rho.frobenius_norm()
                })
                .fold(0.0, f64::max);
            let s = GateScenario::new(p, *setup, mode)?;
            let traj = run_scenario(&s)?;
            let trace = traj.trace.iter().map(|x| (x - 1.0).abs()).fold(0.0, f64::max);
            let eig = traj.min_eigenvalue.iter().flatten().copied().fold(f64::INFINITY, f64::min);
            let herm = traj.hermiticity_residual.iter().copied().fold(0.0, f64::max);
            let f_ok = traj.fidelity.iter().all(|f| (0.0..=1.0 + 1e-9).contains(f));
            out.push(check(
                format!("{name}: {mode} at {t} K conserves trace and positivity"),
                worst <= 1e-12
                    && trace <= 1e-6
                    && eig >= -1e-6
                    && herm <= 1e-9
                    && traj.spectator_drift <= 1e-10
                    && f_ok,
                format!(
                    "generator trace {worst:.1e}, |tr-1| {trace:.1e}, min eig {eig:.1e}, spectators {:.1e}",
                    traj.spectator_drift
                ),
            ));
        }
    }
    Ok(out)
}

/// Runs the verification suite. Setups come from the configuration when
/// `single` is true, otherwise all three cases are checked.
pub fn cmd_verify<W: Write>(cfg: &RunConfig, single: bool, mut out: W) -> Result<bool, CliError> {
    let warnings = cfg.params.validate()?;
    let setups: Vec<GateSetup> = if single {
        vec![setup_for(cfg)?]
    } else {
        GateSetup::all(&cfg.params).to_vec()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let w = |e: io::Error| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    };
    for warning in &warnings {
        writeln!(out, "{warning}").map_err(w)?;
    }
    let mut all = true;
    for setup in &setups {
        for c in checks_for_setup(cfg, setup, &mut rng)? {
            all &= c.pass;
            let tag = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} {}: {}", c.name, c.detail).map_err(w)?;
        }
    }
    writeln!(out, "{}", if all { "all checks passed" } else { "some checks failed" }).map_err(w)?;
    Ok(all)
}
