//! Master equation on the eleven-state simulation basis:
//!
//! ```text
//! dρ/dt = −(i/ħ)[H, ρ] + (Γ/ħ) Σ_i D[σ_i⁻]ρ
//!         + Σ_k (J_k/ħ) ([N_k + 1] D[L_k]ρ + N_k D[L_k†]ρ)
//! ```
//!
//! Every rate is divided by ħ exactly once, when the generator is built.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::model::{
    analytic_eigenstates, rotating_frame_hamiltonian, sector_index, simulation_basis, GateSetup,
    ModelError, PhysicalParams, PSI1,
};
use crate::phonon::{build_channels, PhononError};
use crate::tensorlab::{
    hermitian_eigen, rk4_integrate, DissipativeTerm, IntegrationError, LindbladGenerator,
    OperatorMatrix, Rk4Options, Superoperator, TensorError,
};
use crate::units::HBAR;

/// Which environment couplings are switched on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoiseMode {
    /// Closed system.
    None,
    /// Radiative decay only.
    SpontaneousOnly,
    /// Radiative decay and phonon channels at the parameter temperature.
    Full,
}

impl fmt::Display for NoiseMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::SpontaneousOnly => "spontaneous",
            Self::Full => "full",
        })
    }
}

impl FromStr for NoiseMode {
    type Err = DynamicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(Self::None),
            "spontaneous" | "spontaneous-only" => Ok(Self::SpontaneousOnly),
            "full" => Ok(Self::Full),
            _ => Err(DynamicsError::UnknownNoiseMode(s.to_owned())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MonitorViolation {
    TraceDrift(f64),
    NegativeEigenvalue(f64),
}

impl fmt::Display for MonitorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TraceDrift(d) => write!(f, "|trace - 1| = {d:e}"),
            Self::NegativeEigenvalue(e) => write!(f, "min eigenvalue {e:e}"),
        }
    }
}

#[derive(Clone, Debug, Error)]
pub enum DynamicsError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Phonon(#[from] PhononError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("unknown noise mode {0:?} (expected none, spontaneous or full)")]
    UnknownNoiseMode(String),
    #[error("initial state is not a density matrix: {0}")]
    InvalidInitialState(String),
    #[error("integration stopped: {source}")]
    Integration {
        source: IntegrationError,
        partial: Box<EvolutionResult>,
    },
    #[error("monitor violation at step {step}: {violation}")]
    Monitor {
        step: usize,
        violation: MonitorViolation,
        partial: Box<EvolutionResult>,
    },
}

/// Per-sample diagnostics.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepMonitor {
    pub trace_deviation: f64,
    pub purity: f64,
    /// Present on every `positivity_every`-th sample and on the last one.
    pub min_eigenvalue: Option<f64>,
    /// Relative anti-Hermitian residue produced by the step, before
    /// re-symmetrization.
    pub hermiticity_residual: f64,
    pub error_estimate: Option<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub states: Vec<OperatorMatrix>,
    pub monitors: Vec<StepMonitor>,
}

/// Tolerances of the conservation monitors.
pub const TRACE_TOLERANCE: f64 = 1e-6;
pub const POSITIVITY_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct EvolveOptions {
    pub dt: f64,
    /// Stride of the smallest-eigenvalue check.
    pub positivity_every: usize,
    pub estimate_error: bool,
}

impl EvolveOptions {
    pub fn new(dt: f64) -> Self {
        Self {
            dt,
            positivity_every: 50,
            estimate_error: true,
        }
    }
}

/// Radiative decay `σ_i⁻ = |↑⟩_i⟨X|_i` for each dot, written on the
/// simulation basis: `σ_i⁻ = Σ_k ⟨c_i†↑↑↑|Ψ_k⟩ |Ψ₁⟩⟨Ψ_k|`.
///
/// Each term carries rate Γ/ħ.
pub fn spontaneous_terms(params: &PhysicalParams, setup: &GateSetup) -> Vec<DissipativeTerm> {
    let basis = simulation_basis(setup);
    let sector = analytic_eigenstates(setup);
    (0..3)
        .map(|dot| {
            let mut op = OperatorMatrix::zeros(&basis);
            for (k, row) in sector.bare_to_eigen.iter().enumerate() {
                op[(PSI1, sector_index(k + 2))] = Complex64::new(row[dot], 0.0);
            }
            DissipativeTerm {
                label: format!("radiative decay, dot {}", dot + 1),
                rate: params.gamma / HBAR,
                op,
            }
        })
        .collect()
}

/// `R[ρ]` alone, as a generator with no Hamiltonian part.
pub fn spontaneous_superop(params: &PhysicalParams, setup: &GateSetup) -> LindbladGenerator {
    let basis = simulation_basis(setup);
    LindbladGenerator::new(OperatorMatrix::zeros(&basis), spontaneous_terms(params, setup))
        .expect("radiative terms share the simulation basis")
}

/// Full generator for a setup and noise mode.
pub fn lindblad_rhs(
    params: &PhysicalParams,
    setup: &GateSetup,
    mode: NoiseMode,
) -> Result<LindbladGenerator, DynamicsError> {
    params.validate()?;
    let h = rotating_frame_hamiltonian(params, setup).scale_real(1.0 / HBAR);
    let mut terms = Vec::new();
    if mode != NoiseMode::None {
        terms.extend(spontaneous_terms(params, setup));
    }
    if mode == NoiseMode::Full {
        for channel in build_channels(params, setup)? {
            terms.extend(channel.terms());
        }
    }
    Ok(LindbladGenerator::new(h, terms)?)
}

/// Checks trace 1, Hermiticity and positivity (to 1e-10).
pub fn validate_density_matrix(rho: &OperatorMatrix) -> Result<(), DynamicsError> {
    rho.check_finite()?;
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-10 {
        return Err(DynamicsError::InvalidInitialState(format!("trace {tr}")));
    }
    if rho.hermiticity_residual() > 1e-10 {
        return Err(DynamicsError::InvalidInitialState(format!(
            "anti-Hermitian part {:e}",
            rho.hermiticity_residual()
        )));
    }
    let min = hermitian_eigen(&rho.hermitian_part())?.values[0];
    if min < -1e-10 {
        return Err(DynamicsError::InvalidInitialState(format!("negative eigenvalue {min:e}")));
    }
    Ok(())
}

fn min_eigenvalue(rho: &OperatorMatrix) -> f64 {
    hermitian_eigen(rho)
        .map(|e| e.values[0])
        .unwrap_or(f64::NEG_INFINITY)
}

/// Integrates a generator from `rho0` over `[0, t_max]` with monitors.
pub fn evolve_with(
    generator: &LindbladGenerator,
    rho0: &OperatorMatrix,
    t_max: f64,
    options: &EvolveOptions,
) -> Result<EvolutionResult, DynamicsError> {
    validate_density_matrix(rho0)?;
    generator.hamiltonian().same_basis(rho0)?;
    let sparse = generator.to_sparse();
    let rk = Rk4Options {
        dt: options.dt,
        estimate_error: options.estimate_error,
        // The monitor below reports drift with its own tolerance; the
        // integrator only stops on gross failure.
        trace_tolerance: f64::INFINITY,
    };
    let run = rk4_integrate(|_, r| sparse.apply(r), rho0, (0.0, t_max), &rk);
    let traj = run.trajectory;
    let every = options.positivity_every.max(1);
    let last = traj.len().saturating_sub(1);

    let mut result = EvolutionResult {
        times: Vec::with_capacity(traj.len()),
        states: Vec::with_capacity(traj.len()),
        monitors: Vec::with_capacity(traj.len()),
    };
    for (k, (t, rho)) in traj.times.into_iter().zip(traj.states).enumerate() {
        let step = k.checked_sub(1).map(|s| traj.steps[s]).unwrap_or_default();
        let trace_deviation = (rho.trace().re - 1.0).abs();
        let min_eig = (k % every == 0 || k == last).then(|| min_eigenvalue(&rho));
        let monitor = StepMonitor {
            trace_deviation,
            purity: rho.purity(),
            min_eigenvalue: min_eig,
            hermiticity_residual: step.hermiticity_residual,
            error_estimate: step.error_estimate,
        };
        result.times.push(t);
        result.states.push(rho);
        result.monitors.push(monitor);
        let violation = if trace_deviation > TRACE_TOLERANCE {
            Some(MonitorViolation::TraceDrift(trace_deviation))
        } else {
            min_eig
                .filter(|&e| e < -POSITIVITY_TOLERANCE)
                .map(MonitorViolation::NegativeEigenvalue)
        };
        if let Some(violation) = violation {
            return Err(DynamicsError::Monitor {
                step: k,
                violation,
                partial: Box::new(result),
            });
        }
    }
    match run.failure {
        Some(source) => Err(DynamicsError::Integration {
            source,
            partial: Box::new(result),
        }),
        None => Ok(result),
    }
}

/// Builds the generator for `(params, setup, mode)` and integrates it.
pub fn evolve(
    params: &PhysicalParams,
    setup: &GateSetup,
    mode: NoiseMode,
    rho0: &OperatorMatrix,
    t_max: f64,
    dt: f64,
) -> Result<EvolutionResult, DynamicsError> {
    let generator = lindblad_rhs(params, setup, mode)?;
    evolve_with(&generator, rho0, t_max, &EvolveOptions::new(dt))
}
