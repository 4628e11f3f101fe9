//! Brute-force check of the eleven-state model against the full 27-state
//! product space, closed system, rotating-wave drive.
//!
//! Nothing here is eliminated: off-resonant spin sectors, biexcitons and
//! the triexciton all stay in the Hamiltonian, and the evolution is exact
//! (spectral decomposition, no time stepping).

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::gate::{gate_time, initial_amplitudes, target_state, GateError};
use crate::model::full_space::{
    build_h0_shifted, exciton_creation, exciton_number, full_basis, full_index, single_exciton_index,
    spin_pattern, DotState, FULL_DIM,
};
use crate::model::{
    analytic_eigenstates, auxiliary_index, rotating_frame_hamiltonian, sector_index,
    spectator_full_index, GateSetup, PhysicalParams, PSI1, SIM_DIM, SPECTATOR_COUNT,
};
use crate::tensorlab::{hermitian_eigen, EigenDecomposition, OperatorMatrix, TensorError};
use crate::units::HBAR;

type Ket = Vec<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("invalid oracle request: {0}")]
    InvalidRequest(String),
}

/// `H₀ − ω_l N + (Ω/2) Σ_j (c_j† + c_j)` on the 27 product states (meV).
pub fn full_h_rwa(params: &PhysicalParams, setup: &GateSetup) -> OperatorMatrix {
    let mut h = build_h0_shifted(params, setup.configuration, setup.omega_l);
    let c_dag = exciton_creation(&full_basis());
    let drive = &c_dag + &c_dag.dagger();
    h.add_scaled(Complex64::new(0.5 * params.omega, 0.0), &drive);
    h
}

/// Exact propagator `exp(−iHt/ħ)` applied through an eigendecomposition.
pub struct Propagator {
    eig: EigenDecomposition,
}

impl Propagator {
    pub fn new(h: &OperatorMatrix) -> Result<Self, OracleError> {
        Ok(Self {
            eig: hermitian_eigen(h)?,
        })
    }

    pub fn evolve(&self, psi0: &[Complex64], t: f64) -> Ket {
        let n = psi0.len();
        let mut out = vec![ZERO; n];
        for (e, v) in self.eig.values.iter().zip(&self.eig.vectors) {
            let c: Complex64 = v.iter().zip(psi0).map(|(a, b)| a.conj() * b).sum();
            let c = c * Complex64::from_polar(1.0, -e * t / HBAR);
            for (o, a) in out.iter_mut().zip(v) {
                *o += c * a;
            }
        }
        out
    }
}

/// Places an eleven-state amplitude vector into the product space.
pub fn embed(setup: &GateSetup, v: &[Complex64]) -> Ket {
    let sector = analytic_eigenstates(setup);
    let mut out = vec![ZERO; FULL_DIM];
    for s in 0..SPECTATOR_COUNT {
        out[spectator_full_index(s)] = v[s];
    }
    out[full_index([DotState::Up; 3])] = v[PSI1];
    for (k, row) in sector.bare_to_eigen.iter().enumerate() {
        for (site, &x) in row.iter().enumerate() {
            out[single_exciton_index(site)] += v[sector_index(k + 2)] * x;
        }
    }
    out
}

fn overlap(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// Full-space indices of the eight exciton-free spin configurations.
fn qubit_indices() -> Vec<usize> {
    (0..FULL_DIM).filter(|&i| exciton_number(i) == 0).collect()
}

/// Spin sector of a product state, as a 3-bit number.
fn sector_code(i: usize) -> usize {
    let p = spin_pattern(i);
    (p[0] as usize) << 2 | (p[1] as usize) << 1 | p[2] as usize
}

/// Outcome of one comparison run.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub setup: GateSetup,
    pub t_max: f64,
    /// Largest `|F_full(t) − F_eff(t)|`.
    pub fidelity_deviation: f64,
    /// Largest population outside the qubit states and the auxiliary
    /// exciton eigenstate.
    pub leakage: f64,
    /// Part of `leakage` that stays inside the driven |↑↑↑⟩ sector.
    pub driven_sector_leakage: f64,
    /// Largest population on states with two or three excitons.
    pub multi_exciton_population: f64,
    /// Largest spectator phase error `|arg(a_full/a_eff)|` (rad): the
    /// light shift the effective model leaves out.
    pub spectator_phase_error: f64,
    /// Rabi angular frequency from the first minimum of the |↑↑↑⟩
    /// population, divided by `Ω/ħ`.
    pub extracted_alpha: f64,
    pub max_norm_error: f64,
    /// Largest change of any spin sector's total population.
    pub sector_drift: f64,
    /// Largest population of the two non-auxiliary exciton eigenstates of
    /// the driven sector.
    pub dark_population: f64,
}

impl OracleReport {
    pub fn alpha_relative_error(&self) -> f64 {
        (self.extracted_alpha / self.setup.alpha - 1.0).abs()
    }
}

/// Number of samples on `[0, t_max]` used by [`verify_effective_model`].
pub const ORACLE_SAMPLES: usize = 4000;

/// Evolves the uniform input state in the full space and in the effective
/// model and compares them on a uniform grid.
pub fn verify_effective_model(
    params: &PhysicalParams,
    setup: &GateSetup,
    t_max: f64,
) -> Result<OracleReport, OracleError> {
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(OracleError::InvalidRequest(format!("t_max = {t_max}")));
    }
    let tg = gate_time(params, setup)?;
    let full = Propagator::new(&full_h_rwa(params, setup))?;
    let eff = Propagator::new(&rotating_frame_hamiltonian(params, setup))?;

    let v0 = initial_amplitudes();
    let psi0 = embed(setup, &v0);
    let target = embed(setup, &target_state());
    let aux = auxiliary_index(setup);
    let eigen_kets: Vec<Ket> = (2..=4)
        .map(|k| {
            let mut v = vec![ZERO; SIM_DIM];
            v[sector_index(k)] = Complex64::new(1.0, 0.0);
            embed(setup, &v)
        })
        .collect();
    let qubits = qubit_indices();
    let uuu = full_index([DotState::Up; 3]);
    let sector0: Vec<f64> = sector_populations(&psi0);

    let mut report = OracleReport {
        setup: *setup,
        t_max,
        fidelity_deviation: 0.0,
        leakage: 0.0,
        driven_sector_leakage: 0.0,
        multi_exciton_population: 0.0,
        spectator_phase_error: 0.0,
        extracted_alpha: f64::NAN,
        max_norm_error: 0.0,
        sector_drift: 0.0,
        dark_population: 0.0,
    };
    let mut times = Vec::with_capacity(ORACLE_SAMPLES + 1);
    let mut p_uuu = Vec::with_capacity(ORACLE_SAMPLES + 1);
    for k in 0..=ORACLE_SAMPLES {
        let t = t_max * k as f64 / ORACLE_SAMPLES as f64;
        let psi = full.evolve(&psi0, t);
        let v = eff.evolve(&v0, t);
        let psi_eff = embed(setup, &v);

        let f_full = overlap(&target, &psi).norm_sqr();
        let f_eff = overlap(&target, &psi_eff).norm_sqr();
        report.fidelity_deviation = report.fidelity_deviation.max((f_full - f_eff).abs());

        let kept: f64 = qubits.iter().map(|&i| psi[i].norm_sqr()).sum::<f64>()
            + overlap(&eigen_kets[aux - 2], &psi).norm_sqr();
        report.leakage = report.leakage.max(norm_sqr(&psi) - kept);

        let dark: f64 = (2..=4)
            .filter(|&j| j != aux)
            .map(|j| overlap(&eigen_kets[j - 2], &psi).norm_sqr())
            .sum();
        report.dark_population = report.dark_population.max(dark);
        let in_driven: f64 = (0..FULL_DIM)
            .filter(|&i| sector_code(i) == 7 && exciton_number(i) <= 1)
            .map(|i| psi[i].norm_sqr())
            .sum();
        let aux_pop = overlap(&eigen_kets[aux - 2], &psi).norm_sqr();
        report.driven_sector_leakage =
            report.driven_sector_leakage.max(in_driven - psi[uuu].norm_sqr() - aux_pop);

        let multi: f64 = (0..FULL_DIM)
            .filter(|&i| exciton_number(i) >= 2)
            .map(|i| psi[i].norm_sqr())
            .sum();
        report.multi_exciton_population = report.multi_exciton_population.max(multi);

        for s in 0..SPECTATOR_COUNT {
            let i = spectator_full_index(s);
            let ratio = psi[i] / psi_eff[i];
            report.spectator_phase_error = report.spectator_phase_error.max(ratio.arg().abs());
        }

        report.max_norm_error = report.max_norm_error.max((norm_sqr(&psi) - 1.0).abs());
        for (a, b) in sector_populations(&psi).iter().zip(&sector0) {
            report.sector_drift = report.sector_drift.max((a - b).abs());
        }
        times.push(t);
        p_uuu.push(psi[uuu].norm_sqr());
    }
    report.extracted_alpha = first_minimum(&times, &p_uuu, 0.25 * tg, 0.75 * tg)
        .map(|t_min| PI * HBAR / (params.omega * t_min))
        .unwrap_or(f64::NAN);
    Ok(report)
}

fn sector_populations(psi: &[Complex64]) -> Vec<f64> {
    let mut out = vec![0.0; 8];
    for (i, a) in psi.iter().enumerate() {
        out[sector_code(i)] += a.norm_sqr();
    }
    out
}

/// Time of the smallest sample in `[lo, hi]`, parabola-refined.
fn first_minimum(times: &[f64], values: &[f64], lo: f64, hi: f64) -> Option<f64> {
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();
    crate::gate::peak_in_window(times, &negated, lo, hi).map(|p| p.time)
}

/// `2 |⟨Ψ_s| Σ_j c_j† |↑↑↑⟩|` from the closed-form eigenvectors, built
/// through the product-space creation operator.
pub fn verify_alpha_from_overlap(setup: &GateSetup) -> f64 {
    let aux = auxiliary_index(setup);
    let mut v = vec![ZERO; SIM_DIM];
    v[sector_index(aux)] = Complex64::new(1.0, 0.0);
    let psi_s = embed(setup, &v);
    let mut vacuum = vec![ZERO; FULL_DIM];
    vacuum[full_index([DotState::Up; 3])] = Complex64::new(1.0, 0.0);
    let bright = exciton_creation(&full_basis()).apply(&vacuum);
    // Σ_j c_j† already carries the factor 2 relative to the (Ω/2) drive.
    overlap(&psi_s, &bright).norm()
}

/// Result of integrating the drive without the rotating-wave approximation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoRwaReport {
    pub t_max: f64,
    pub steps: usize,
    /// Largest `|ψ_full(t) − ψ_rwa(t)|` (2-norm) on the step grid.
    pub max_deviation: f64,
    pub norm_error: f64,
}

/// Longest span accepted by [`no_rwa_spot_check`] (ps).
pub const NO_RWA_MAX_SPAN: f64 = 1.0;

/// Integrates `H(t) = H_rwa + (Ω/2)(C† e^{2iω_l t} + C e^{−2iω_l t})` (the
/// full `Ω cos(ω_l t)` drive in the rotating frame) with RK4 and compares
/// with the exact rotating-wave evolution.
pub fn no_rwa_spot_check(
    params: &PhysicalParams,
    setup: &GateSetup,
    t_max: f64,
    dt: f64,
) -> Result<NoRwaReport, OracleError> {
    if !(t_max > 0.0 && t_max <= NO_RWA_MAX_SPAN) {
        return Err(OracleError::InvalidRequest(format!(
            "no-RWA span must lie in (0, {NO_RWA_MAX_SPAN}] ps, got {t_max}"
        )));
    }
    if !(dt > 0.0 && dt <= t_max) {
        return Err(OracleError::InvalidRequest(format!("dt = {dt}")));
    }
    let h_rwa = full_h_rwa(params, setup);
    let exact = Propagator::new(&h_rwa)?;
    let c_dag = exciton_creation(&full_basis());
    let c = c_dag.dagger();
    let w2 = 2.0 * setup.omega_l / HBAR;
    let g = 0.5 * params.omega;
    let minus_i_over_hbar = Complex64::new(0.0, -1.0 / HBAR);
    let rhs = |t: f64, psi: &[Complex64]| -> Ket {
        let phase = Complex64::from_polar(g, w2 * t);
        let mut out = h_rwa.apply(psi);
        let up = c_dag.apply(psi);
        let down = c.apply(psi);
        for ((o, u), d) in out.iter_mut().zip(&up).zip(&down) {
            *o = (*o + phase * u + phase.conj() * d) * minus_i_over_hbar;
        }
        out
    };

    let psi0 = embed(setup, &initial_amplitudes());
    let steps = crate::tensorlab::step_count(t_max, dt);
    let h = t_max / steps as f64;
    let mut psi = psi0.clone();
    let mut max_deviation: f64 = 0.0;
    for k in 0..steps {
        let t = k as f64 * h;
        let axpy = |a: &[Complex64], s: f64, b: &[Complex64]| -> Ket {
            a.iter().zip(b).map(|(x, y)| x + y * s).collect()
        };
        let k1 = rhs(t, &psi);
        let k2 = rhs(t + 0.5 * h, &axpy(&psi, 0.5 * h, &k1));
        let k3 = rhs(t + 0.5 * h, &axpy(&psi, 0.5 * h, &k2));
        let k4 = rhs(t + h, &axpy(&psi, h, &k3));
        for j in 0..psi.len() {
            psi[j] += (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]) * (h / 6.0);
        }
        let reference = exact.evolve(&psi0, t + h);
        let diff: f64 = psi
            .iter()
            .zip(&reference)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        max_deviation = max_deviation.max(diff);
    }
    Ok(NoRwaReport {
        t_max,
        steps,
        max_deviation,
        norm_error: (norm_sqr(&psi) - 1.0).abs(),
    })
}
