//! The controlled-phase protocol: input and target states, π-pulse timing,
//! fidelity trajectories and the figure presets.
//!
//! The input is the uniform superposition of all eight spin configurations.
//! Driving the |↑↑↑⟩ component through a full Rabi cycle on its auxiliary
//! exciton returns it with a sign flip, which is the gate.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::dynamics::{evolve, DynamicsError, NoiseMode};
use crate::model::{
    simulation_basis, Configuration, GateSetup, ModelError, PhysicalParams, Transition, PSI1,
    SIM_DIM, SPECTATOR_COUNT,
};
use crate::tensorlab::OperatorMatrix;
use crate::units::HBAR;

/// Largest tolerated imaginary part of `⟨Ψ_f|ρ|Ψ_f⟩`.
pub const FIDELITY_IMAG_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, Error)]
pub enum GateError {
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("gate time undefined for drive amplitude {0} meV")]
    NoDrive(f64),
    #[error("fidelity has imaginary part {imag:e} at t = {time} ps")]
    ComplexFidelity { time: f64, imag: f64 },
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}

/// One fidelity-versus-time run.
#[derive(Clone, Debug, PartialEq)]
pub struct GateScenario {
    pub label: String,
    pub setup: GateSetup,
    /// Carries the bath temperature.
    pub params: PhysicalParams,
    pub mode: NoiseMode,
    pub t_max: f64,
    pub dt: f64,
}

impl GateScenario {
    /// Default span `2.5 t_g` and step `t_g / 2000`.
    pub fn new(
        params: PhysicalParams,
        setup: GateSetup,
        mode: NoiseMode,
    ) -> Result<Self, GateError> {
        let tg = gate_time(&params, &setup)?;
        Ok(Self {
            label: default_label(&setup, mode, params.temperature),
            setup,
            params,
            mode,
            t_max: 2.5 * tg,
            dt: tg / 2000.0,
        })
    }

    pub fn temperature(&self) -> f64 {
        self.params.temperature
    }

    pub fn validate(&self) -> Result<(), GateError> {
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(GateError::InvalidScenario(format!("t_max = {}", self.t_max)));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_max) {
            return Err(GateError::InvalidScenario(format!("dt = {}", self.dt)));
        }
        Ok(())
    }
}

fn default_label(setup: &GateSetup, mode: NoiseMode, temperature: f64) -> String {
    let base = format!("{}_{}", setup.configuration, setup.transition);
    match mode {
        NoiseMode::Full => format!("{base}_full_T{temperature}K"),
        _ => format!("{base}_{mode}"),
    }
}

/// Sampled fidelity and monitors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FidelityTrajectory {
    pub times: Vec<f64>,
    pub fidelity: Vec<f64>,
    pub trace: Vec<f64>,
    pub purity: Vec<f64>,
    /// Only sampled every few steps; `None` elsewhere.
    pub min_eigenvalue: Vec<Option<f64>>,
    pub hermiticity_residual: Vec<f64>,
    /// Largest change of any spectator population over the run.
    pub spectator_drift: f64,
}

impl FidelityTrajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Fidelity at the sample closest to `t`.
    pub fn fidelity_near(&self, t: f64) -> Option<f64> {
        let k = self
            .times
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - t).abs().total_cmp(&(b.1 - t).abs()))?
            .0;
        Some(self.fidelity[k])
    }
}

/// Amplitude vector of the uniform input state.
pub fn initial_amplitudes() -> Vec<Complex64> {
    let a = 1.0 / 8f64.sqrt();
    let mut v = vec![Complex64::new(0.0, 0.0); SIM_DIM];
    for x in v.iter_mut().take(PSI1 + 1) {
        *x = Complex64::new(a, 0.0);
    }
    v
}

/// `|Ψ_i⟩⟨Ψ_i|` for `setup`'s simulation basis.
pub fn initial_state(setup: &GateSetup) -> OperatorMatrix {
    let v = initial_amplitudes();
    OperatorMatrix::outer(&simulation_basis(setup), &v, &v)
}

/// Ideal output: the input with the sign of |↑↑↑⟩ flipped.
pub fn target_state() -> Vec<Complex64> {
    let mut v = initial_amplitudes();
    v[PSI1] = -v[PSI1];
    v
}

/// π-pulse duration `2πħ/(αΩ)` in ps.
pub fn gate_time(params: &PhysicalParams, setup: &GateSetup) -> Result<f64, GateError> {
    let rabi = setup.alpha * params.omega;
    if !(rabi.abs() > 0.0 && rabi.is_finite()) {
        return Err(GateError::NoDrive(params.omega));
    }
    Ok(2.0 * PI * HBAR / rabi.abs())
}

/// Closed-system fidelity `[(7 − cos θ)/8]²`, `θ = αΩt/2ħ`.
pub fn analytic_fidelity(t: f64, params: &PhysicalParams, setup: &GateSetup) -> f64 {
    let theta = setup.alpha * params.omega * t / (2.0 * HBAR);
    ((7.0 - theta.cos()) / 8.0).powi(2)
}

/// `⟨Ψ_f|ρ|Ψ_f⟩`, rejecting a non-negligible imaginary part.
pub fn fidelity(rho: &OperatorMatrix, time: f64) -> Result<f64, GateError> {
    let f = rho.expectation(&target_state());
    if f.im.abs() > FIDELITY_IMAG_TOLERANCE {
        return Err(GateError::ComplexFidelity { time, imag: f.im });
    }
    Ok(f.re)
}

pub fn run_scenario(s: &GateScenario) -> Result<FidelityTrajectory, GateError> {
    s.validate()?;
    let rho0 = initial_state(&s.setup);
    let res = evolve(&s.params, &s.setup, s.mode, &rho0, s.t_max, s.dt)?;
    let mut out = FidelityTrajectory::default();
    let p0: Vec<f64> = (0..SPECTATOR_COUNT).map(|i| rho0.population(i)).collect();
    for ((&t, rho), m) in res.times.iter().zip(&res.states).zip(&res.monitors) {
        out.times.push(t);
        out.fidelity.push(fidelity(rho, t)?);
        out.trace.push(rho.trace().re);
        out.purity.push(m.purity);
        out.min_eigenvalue.push(m.min_eigenvalue);
        out.hermiticity_residual.push(m.hermiticity_residual);
        for (i, p) in p0.iter().enumerate() {
            out.spectator_drift = out.spectator_drift.max((rho.population(i) - p).abs());
        }
    }
    Ok(out)
}

/// Which figure panel a preset belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Panel {
    A,
    B,
    C,
}

impl Panel {
    pub const ALL: [Self; 3] = [Self::A, Self::B, Self::C];

    pub fn letter(self) -> char {
        match self {
            Self::A => 'a',
            Self::B => 'b',
            Self::C => 'c',
        }
    }

    pub fn setup(self, params: &PhysicalParams) -> GateSetup {
        let (c, t) = match self {
            Self::A => (Configuration::Ring, Transition::HighLevel),
            Self::B => (Configuration::Line, Transition::HighLevel),
            Self::C => (Configuration::Line, Transition::LowLevel),
        };
        GateSetup::new(c, t, params).expect("valid panel setup")
    }

    /// Bath temperatures (K) of the three full-noise curves.
    pub fn temperatures(self) -> [f64; 3] {
        match self {
            Self::A | Self::B => [0.0, 10.0, 20.0],
            Self::C => [0.0, 5.0, 10.0],
        }
    }
}

/// A scenario tagged with its panel.
#[derive(Clone, Debug, PartialEq)]
pub struct Preset {
    pub panel: Panel,
    pub scenario: GateScenario,
}

impl Preset {
    /// File stem such as `a_full_T10K`.
    pub fn stem(&self) -> String {
        let s = &self.scenario;
        match s.mode {
            NoiseMode::Full => format!("{}_full_T{}K", self.panel.letter(), s.temperature()),
            mode => format!("{}_{mode}", self.panel.letter()),
        }
    }
}

/// Five curves per panel: closed system, radiative decay only, and full
/// noise at three temperatures.
pub fn fig2_presets(params: &PhysicalParams) -> Result<Vec<Preset>, GateError> {
    let mut out = Vec::with_capacity(15);
    for panel in Panel::ALL {
        let setup = panel.setup(params);
        let base = params.with_temperature(0.0);
        let mut push = |p: PhysicalParams, mode| -> Result<(), GateError> {
            let scenario = GateScenario::new(p, setup, mode)?;
            let mut preset = Preset { panel, scenario };
            preset.scenario.label = preset.stem();
            out.push(preset);
            Ok(())
        };
        push(base, NoiseMode::None)?;
        push(base, NoiseMode::SpontaneousOnly)?;
        for t in panel.temperatures() {
            push(params.with_temperature(t), NoiseMode::Full)?;
        }
    }
    Ok(out)
}

/// A located maximum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Peak {
    pub time: f64,
    pub value: f64,
}

/// Largest sample with `lo ≤ t ≤ hi`, refined by a parabola through it and
/// its neighbours when it is interior.
pub fn peak_in_window(times: &[f64], values: &[f64], lo: f64, hi: f64) -> Option<Peak> {
    let (k, _) = times
        .iter()
        .zip(values)
        .enumerate()
        .filter(|(_, (&t, _))| t >= lo && t <= hi)
        .max_by(|a, b| a.1 .1.total_cmp(b.1 .1))?;
    let sample = Peak {
        time: times[k],
        value: values[k],
    };
    if k == 0 || k + 1 >= times.len() {
        return Some(sample);
    }
    let (y0, y1, y2) = (values[k - 1], values[k], values[k + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    if curvature >= 0.0 {
        return Some(sample);
    }
    // Uniform grid assumed around the peak.
    let h = 0.5 * (times[k + 1] - times[k - 1]);
    let offset = 0.5 * (y0 - y2) / curvature;
    Some(Peak {
        time: times[k] + offset * h,
        value: y1 - 0.25 * (y0 - y2) * offset,
    })
}

/// Number of swings in `values` whose size reaches `min_swing`: the signal
/// has to rise and then fall (or fall and then rise) by that much.
pub fn count_swings(values: &[f64], min_swing: f64) -> usize {
    let Some(&first) = values.first() else {
        return 0;
    };
    let (mut lo, mut hi) = (first, first);
    // +1 after a confirmed rise, −1 after a confirmed fall.
    let mut direction = 0i8;
    let mut swings = 0;
    for &v in &values[1..] {
        match direction {
            0 => {
                lo = lo.min(v);
                hi = hi.max(v);
                if v - lo >= min_swing {
                    direction = 1;
                    hi = v;
                } else if hi - v >= min_swing {
                    direction = -1;
                    lo = v;
                }
            }
            1 => {
                hi = hi.max(v);
                if hi - v >= min_swing {
                    swings += 1;
                    direction = -1;
                    lo = v;
                }
            }
            _ => {
                lo = lo.min(v);
                if v - lo >= min_swing {
                    swings += 1;
                    direction = 1;
                    hi = v;
                }
            }
        }
    }
    swings
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> PhysicalParams {
        PhysicalParams::default()
    }

    #[test]
    fn input_state_populations() {
        for setup in GateSetup::all(&p()) {
            let rho = initial_state(&setup);
            assert!((rho.trace().re - 1.0).abs() < 1e-15);
            assert!((rho.purity() - 1.0).abs() < 1e-14);
            for i in 0..=PSI1 {
                assert!((rho.population(i) - 0.125).abs() < 1e-15);
            }
            for i in PSI1 + 1..SIM_DIM {
                assert_eq!(rho.population(i), 0.0);
            }
        }
    }

    #[test]
    fn target_overlaps() {
        let f = target_state();
        let i = initial_amplitudes();
        let norm: f64 = f.iter().map(|x| x.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
        let overlap: Complex64 = f.iter().zip(&i).map(|(a, b)| a.conj() * b).sum();
        assert!((overlap.re - 0.75).abs() < 1e-15);
        let rho = initial_state(&GateSetup::all(&p())[0]);
        assert!((fidelity(&rho, 0.0).unwrap() - 0.5625).abs() < 1e-15);
    }

    #[test]
    fn gate_times() {
        let [ring, high, low] = GateSetup::all(&p());
        assert!((gate_time(&p(), &ring).unwrap() - 23.877).abs() < 2e-3);
        assert!((gate_time(&p(), &high).unwrap() - 24.226).abs() < 2e-3);
        assert!((gate_time(&p(), &low).unwrap() - 141.20).abs() < 1e-2);
        let mut dark = p();
        dark.omega = 0.0;
        assert!(matches!(gate_time(&dark, &ring), Err(GateError::NoDrive(_))));
    }

    #[test]
    fn analytic_fidelity_landmarks() {
        for setup in GateSetup::all(&p()) {
            let tg = gate_time(&p(), &setup).unwrap();
            assert!((analytic_fidelity(0.0, &p(), &setup) - 0.5625).abs() < 1e-15);
            assert!((analytic_fidelity(tg, &p(), &setup) - 1.0).abs() < 1e-14);
            assert!((analytic_fidelity(0.5 * tg, &p(), &setup) - 0.765625).abs() < 1e-14);
        }
    }

    #[test]
    fn preset_layout() {
        let presets = fig2_presets(&p()).unwrap();
        assert_eq!(presets.len(), 15);
        let c: Vec<f64> = presets
            .iter()
            .filter(|x| x.panel == Panel::C && x.scenario.mode == NoiseMode::Full)
            .map(|x| x.scenario.temperature())
            .collect();
        assert_eq!(c, [0.0, 5.0, 10.0]);
        let a = &presets[0].scenario;
        assert_eq!(a.setup.configuration, Configuration::Ring);
        assert_eq!(a.setup.transition, Transition::HighLevel);
        let stems: std::collections::BTreeSet<String> = presets.iter().map(Preset::stem).collect();
        assert_eq!(stems.len(), 15);
        assert!(stems.contains("c_full_T5K") && stems.contains("b_spontaneous"));
        assert!(presets.iter().all(|x| x.scenario.params.omega == 0.1));
    }

    #[test]
    fn noiseless_run_matches_formula() {
        let params = p();
        let ring = GateSetup::all(&params)[0];
        let s = GateScenario::new(params, ring, NoiseMode::None).unwrap();
        let traj = run_scenario(&s).unwrap();
        let worst = traj
            .times
            .iter()
            .zip(&traj.fidelity)
            .map(|(&t, f)| (f - analytic_fidelity(t, &params, &ring)).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6, "{worst}");
        assert!(traj.spectator_drift < 1e-10);
    }

    #[test]
    fn spectators_protected_under_full_noise() {
        let params = p().with_temperature(20.0);
        for setup in GateSetup::all(&params) {
            let mut s = GateScenario::new(params, setup, NoiseMode::Full).unwrap();
            s.t_max = 20.0;
            s.dt = 0.05;
            let traj = run_scenario(&s).unwrap();
            assert!(traj.spectator_drift < 1e-10, "{}", setup.name());
        }
    }

    #[test]
    fn parabolic_peak_refinement() {
        let times: Vec<f64> = (0..50).map(|k| k as f64 * 0.1).collect();
        let values: Vec<f64> = times.iter().map(|t| 1.0 - (t - 2.33f64).powi(2)).collect();
        let peak = peak_in_window(&times, &values, 0.0, 5.0).unwrap();
        assert!((peak.time - 2.33).abs() < 1e-12);
        assert!((peak.value - 1.0).abs() < 1e-12);
        assert!(peak_in_window(&times, &values, 10.0, 11.0).is_none());
    }

    #[test]
    fn swing_counting() {
        let wave: Vec<f64> = (0..1000).map(|k| (k as f64 * 0.01).sin()).collect();
        // sin over 10 rad: up, down, up, down.
        assert_eq!(count_swings(&wave, 0.5), 3);
        let flat: Vec<f64> = wave.iter().map(|x| 0.01 * x).collect();
        assert_eq!(count_swings(&flat, 0.1), 0);
        assert_eq!(count_swings(&[], 0.1), 0);
    }
}
