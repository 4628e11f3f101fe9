//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use tridot::dynamics::{evolve_with, EvolveOptions, NoiseMode};
use tridot::gate::{
    analytic_fidelity, count_swings, fig2_presets, gate_time, peak_in_window, run_scenario,
    FidelityTrajectory, GateScenario, Panel, Preset,
};
use tridot::model::{GateSetup, PhysicalParams};
use tridot::oracle::verify_effective_model;
use tridot::phonon::{
    form_factor, spectral_density, thermal_occupation, ChannelSpec, FormFactorConvention,
    FormFactorParams, PhononChannel, SpectralBranch, TabulatedFrequency,
};
use tridot::tensorlab::{
    rk4_evolve, Basis, DissipativeTerm, LindbladGenerator, OperatorMatrix, Rk4Options, Superoperator,
};
use tridot::units::HBAR;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Fidelity of a run refined to `dt/2`, sampled on the original grid.
fn halved(s: &GateScenario) -> Vec<f64> {
    let mut fine = s.clone();
    fine.dt *= 0.5;
    let tr = run_scenario(&fine).expect("halved run");
    tr.fidelity.iter().step_by(2).copied().collect()
}

fn noiseless_runs(params: &PhysicalParams) -> Vec<(GateSetup, f64, FidelityTrajectory, f64)> {
    GateSetup::all(params)
        .into_iter()
        .map(|setup| {
            let tg = gate_time(params, &setup).unwrap();
            let mut s = GateScenario::new(*params, setup, NoiseMode::None).unwrap();
            s.t_max = 2.0 * tg;
            let start = Instant::now();
            let tr = run_scenario(&s).unwrap();
            (setup, tg, tr, start.elapsed().as_secs_f64())
        })
        .collect()
}

fn criterion_1(runs: &[(GateSetup, f64, FidelityTrajectory, f64)], params: &PhysicalParams) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (setup, _, tr, secs) in runs {
        let want: Vec<f64> = tr.times.iter().map(|&t| analytic_fidelity(t, params, setup)).collect();
        let dev = max_abs_diff(&tr.fidelity, &want);
        pass &= dev <= 1e-6 && *secs < 5.0;
        parts.push(format!("{} dev {dev:.1e} in {secs:.2}s", setup.name()));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_2(runs: &[(GateSetup, f64, FidelityTrajectory, f64)]) -> Outcome {
    let quoted = [23.88, 24.23, 141.2];
    let mut pass = true;
    let mut parts = Vec::new();
    for ((setup, tg, tr, _), q) in runs.iter().zip(quoted) {
        let peak = peak_in_window(&tr.times, &tr.fidelity, 0.5 * tg, 1.5 * tg).unwrap();
        let rel = (peak.time / tg - 1.0).abs();
        let quoted_rel = (tg / q - 1.0).abs();
        pass &= rel <= 1e-3 && quoted_rel <= 1e-3;
        parts.push(format!("{} peak {:.4} ps vs t_g {tg:.4} ps", setup.name(), peak.time));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_3(params: &PhysicalParams) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for setup in GateSetup::all(params) {
        let tg = gate_time(params, &setup).unwrap();
        let r = verify_effective_model(params, &setup, 2.0 * tg).unwrap();
        let ok = r.fidelity_deviation <= 0.02 && r.leakage <= 0.01 && r.alpha_relative_error() <= 0.02;
        pass &= ok;
        parts.push(format!(
            "{} dF {:.4} leak {:.4} alpha {:.5} ({:.2}%)",
            setup.name(),
            r.fidelity_deviation,
            r.leakage,
            r.extracted_alpha,
            100.0 * r.alpha_relative_error()
        ));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_4(runs: &[(Preset, FidelityTrajectory)]) -> Outcome {
    let (mut trace, mut eig, mut herm): (f64, f64, f64) = (0.0, f64::INFINITY, 0.0);
    for (_, tr) in runs {
        trace = tr.trace.iter().map(|t| (t - 1.0).abs()).fold(trace, f64::max);
        eig = tr.min_eigenvalue.iter().flatten().copied().fold(eig, f64::min);
        herm = tr.hermiticity_residual.iter().copied().fold(herm, f64::max);
    }
    outcome(
        trace <= 1e-6 && eig >= -1e-6 && herm <= 1e-9,
        format!("{} presets: max |tr-1| {trace:.1e}, min eig {eig:.1e}, hermiticity {herm:.1e}", runs.len()),
    )
}

fn find<'a>(runs: &'a [(Preset, FidelityTrajectory)], stem: &str) -> &'a (Preset, FidelityTrajectory) {
    runs.iter().find(|(p, _)| p.stem() == stem).expect("preset present")
}

fn criterion_5(runs: &[(Preset, FidelityTrajectory)], params: &PhysicalParams) -> Outcome {
    let mut parts = Vec::new();

    // (a) line/low at T = 0 against radiative decay only, over [0, 2 t_g].
    let tg_c = gate_time(params, &Panel::C.setup(params)).unwrap();
    let (_, full) = find(runs, "c_full_T0K");
    let (_, spont) = find(runs, "c_spontaneous");
    let dev_a = full
        .times
        .iter()
        .zip(full.fidelity.iter().zip(&spont.fidelity))
        .filter(|(&t, _)| t <= 2.0 * tg_c + 1e-9)
        .map(|(_, (a, b))| (a - b).abs())
        .fold(0.0, f64::max);
    let a = dev_a <= 0.02;
    parts.push(format!("(a) {dev_a:.1e}"));

    // (b) peak fidelity strictly decreasing in T within each panel.
    let mut b = true;
    for panel in Panel::ALL {
        let peaks: Vec<f64> = panel
            .temperatures()
            .iter()
            .map(|t| {
                let (_, tr) = find(runs, &format!("{}_full_T{t}K", panel.letter()));
                tr.fidelity.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        b &= peaks.windows(2).all(|w| w[0] > w[1]);
        parts.push(format!(
            "(b) {} {}",
            panel.letter(),
            peaks.iter().map(|p| format!("{p:.5}")).collect::<Vec<_>>().join(" > ")
        ));
    }

    // (c) damped: second peak below the first for ring and line/high.
    let mut c = true;
    for panel in [Panel::A, Panel::B] {
        let tg = gate_time(params, &panel.setup(params)).unwrap();
        for t in panel.temperatures() {
            let (_, tr) = find(runs, &format!("{}_full_T{t}K", panel.letter()));
            let first = peak_in_window(&tr.times, &tr.fidelity, 0.5 * tg, 1.5 * tg).unwrap();
            let second = peak_in_window(&tr.times, &tr.fidelity, 1.5 * tg, 2.5 * tg).unwrap();
            c &= second.value < first.value;
        }
    }
    parts.push(format!("(c) {}", if c { "ok" } else { "violated" }));

    // (d) at least two swings of size 0.1 with radiative decay only.
    let mut d = true;
    let mut counts = Vec::new();
    for panel in Panel::ALL {
        let (_, tr) = find(runs, &format!("{}_spontaneous", panel.letter()));
        let n = count_swings(&tr.fidelity, 0.1);
        d &= n >= 2;
        counts.push(n.to_string());
    }
    parts.push(format!("(d) swings {}", counts.join("/")));
    outcome(a && b && c && d, parts.join("; "))
}

fn criterion_6() -> Outcome {
    // Two levels split by ω with one thermal channel |g⟩⟨e|.
    let basis = Basis::new(["g", "e"]).unwrap();
    let (omega, temperature, j) = (1.0, 10.0, 0.05);
    let n = thermal_occupation(omega, temperature).unwrap();
    let channel = PhononChannel {
        label: "toy".into(),
        spec: ChannelSpec {
            branch: SpectralBranch::LineSine,
            prefactor: 1.0,
            target: 1,
            source: 2,
            tabulated: TabulatedFrequency {
                v_f_multiple: 0.0,
                alpha_omega_multiple: 0.0,
            },
        },
        omega,
        tabulated_omega: omega,
        j,
        clamped: false,
        n,
        op: OperatorMatrix::transition(&basis, 0, 1),
    };
    let h = OperatorMatrix::diagonal(&basis, &[0.0, omega / HBAR]).unwrap();
    let generator = LindbladGenerator::new(h, channel.terms().to_vec()).unwrap();
    let rho0 = OperatorMatrix::transition(&basis, 1, 1);
    let res = evolve_with(&generator, &rho0, 200.0, &EvolveOptions::new(0.05)).unwrap();
    let rho = res.states.last().unwrap();
    let ratio = rho.population(1) / rho.population(0);
    let gibbs = (-omega / (tridot::units::K_B * temperature)).exp();
    let err = (ratio - gibbs).abs();
    outcome(err <= 1e-4, format!("ratio {ratio:.8} vs Gibbs {gibbs:.8} (|diff| {err:.1e})"))
}

fn decay_error(dt: f64) -> f64 {
    let basis = Basis::new(["g", "e"]).unwrap();
    let term = DissipativeTerm {
        label: "decay".into(),
        rate: 1.0,
        op: OperatorMatrix::transition(&basis, 0, 1),
    };
    let g = LindbladGenerator::new(OperatorMatrix::zeros(&basis), vec![term]).unwrap();
    let rho0 = OperatorMatrix::transition(&basis, 1, 1);
    let traj = rk4_evolve(|_, r| g.apply(r), &rho0, (0.0, 2.0), &Rk4Options::new(dt)).unwrap();
    traj.times
        .iter()
        .zip(&traj.states)
        .map(|(t, r)| (r.population(1) - (-t).exp()).abs())
        .fold(0.0, f64::max)
}

fn criterion_7(runs: &[(Preset, FidelityTrajectory)]) -> Outcome {
    let order = (decay_error(0.2) / decay_error(0.1)).log2();
    let mut worst: f64 = 0.0;
    for (preset, tr) in runs {
        worst = worst.max(max_abs_diff(&tr.fidelity, &halved(&preset.scenario)));
    }
    outcome(
        (3.7..=4.3).contains(&order) && worst < 1e-7,
        format!("order {order:.3}; dt-halving max change {worst:.1e}"),
    )
}

fn criterion_8(params: &PhysicalParams) -> Outcome {
    let [ring, ..] = GateSetup::all(params);
    let omega = PI * HBAR * params.c_s / (3f64.sqrt() * ring.d);
    let ff = FormFactorParams::new(params, FormFactorConvention::RingTable);
    let g = form_factor(omega, &ff);
    let j = spectral_density(params, &ring, SpectralBranch::RingSinc, omega).unwrap().value;
    let spot = (j / (8.0 * PI * g) - 1.0).abs();

    let mut same = *params;
    same.d_h = same.d_e;
    same.l_h = same.l_e;
    let ff_same = FormFactorParams::new(&same, FormFactorConvention::RingTable);
    let zero = [0.1, 0.5, 1.0, 2.5, 5.0].iter().all(|&w| form_factor(w, &ff_same) == 0.0);

    let line = FormFactorParams::new(params, FormFactorConvention::LineTable);
    let ratio = form_factor(2.0, &ff) / form_factor(2.0, &line);
    let ratio_err = (ratio * 4.0 * PI - 1.0).abs();
    outcome(
        spot <= 1e-12 && zero && ratio_err <= 1e-12,
        format!("branch-1 rel err {spot:.1e}; zero when carriers equal: {zero}; ring/line ratio x 4pi - 1 = {ratio_err:.1e}"),
    )
}

fn main() -> ExitCode {
    let params = PhysicalParams::default();
    let noiseless = noiseless_runs(&params);
    let presets: Vec<(Preset, FidelityTrajectory)> = fig2_presets(&params)
        .unwrap()
        .into_iter()
        .map(|p| {
            let tr = run_scenario(&p.scenario).expect("preset run");
            (p, tr)
        })
        .collect();

    let results = [
        criterion_1(&noiseless, &params),
        criterion_2(&noiseless),
        criterion_3(&params),
        criterion_4(&presets),
        criterion_5(&presets, &params),
        criterion_6(),
        criterion_7(&presets),
        criterion_8(&params),
    ];
    let mut failed = 0;
    for (k, r) in results.iter().enumerate() {
        let tag = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {tag} | {}", k + 1, r.detail);
        failed += usize::from(!r.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
