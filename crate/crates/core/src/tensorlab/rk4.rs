//! Fixed-step classic Runge–Kutta for density matrices.
//!
//! Each accepted step is one RK4 step of size `dt`. When error estimation is
//! on, the same interval is also covered by two half steps and the
//! difference is reported as the local error estimate; the half-step result
//! is discarded so the scheme stays plain RK4 on a uniform grid.

use num_complex::Complex64;
use thiserror::Error;

use super::OperatorMatrix;

#[derive(Clone, Debug)]
pub struct Rk4Options {
    /// Upper bound on the step; the span is split into equal steps no
    /// larger than this.
    pub dt: f64,
    pub estimate_error: bool,
    /// Largest tolerated `|tr ρ(t) − tr ρ(0)|`.
    pub trace_tolerance: f64,
}

impl Rk4Options {
    pub fn new(dt: f64) -> Self {
        Self {
            dt,
            estimate_error: true,
            trace_tolerance: 1e-6,
        }
    }

    pub fn without_error_estimate(mut self) -> Self {
        self.estimate_error = false;
        self
    }
}

/// Diagnostics for one step.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepRecord {
    /// `max |ρ_full − ρ_half,half|` from step doubling.
    pub error_estimate: Option<f64>,
    /// `max |ρ − ρ†|` before re-symmetrization, relative to `max |ρ|`.
    pub hermiticity_residual: f64,
}

#[derive(Clone, Debug, Default)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<OperatorMatrix>,
    /// `steps[k]` describes the step from `times[k]` to `times[k + 1]`.
    pub steps: Vec<StepRecord>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, &OperatorMatrix)> {
        self.times.last().copied().zip(self.states.last())
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum IntegrationError {
    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("time span [{0}, {1}] is empty or not finite")]
    InvalidSpan(f64, f64),
    #[error("trace drifted by {drift:e} at step {step}")]
    TraceDrift { step: usize, drift: f64 },
    #[error("non-finite entry at step {step}")]
    NonFinite { step: usize },
}

/// Result of an integration that may have stopped early.
#[derive(Clone, Debug)]
pub struct Integration {
    pub trajectory: Trajectory,
    pub failure: Option<IntegrationError>,
}

/// Number of uniform steps covering `span` with steps no larger than `dt`.
pub fn step_count(span: f64, dt: f64) -> usize {
    ((span / dt) * (1.0 - 1e-12)).ceil().max(1.0) as usize
}

/// One classic RK4 step of size `h` from `(t, rho)`.
pub fn rk4_step<F>(rhs: &F, t: f64, rho: &OperatorMatrix, h: f64) -> OperatorMatrix
where
    F: Fn(f64, &OperatorMatrix) -> OperatorMatrix,
{
    let half = Complex64::new(0.5 * h, 0.0);
    let full = Complex64::new(h, 0.0);

    let k1 = rhs(t, rho);
    let mut y = rho.clone();
    y.add_scaled(half, &k1);
    let k2 = rhs(t + 0.5 * h, &y);
    let mut y = rho.clone();
    y.add_scaled(half, &k2);
    let k3 = rhs(t + 0.5 * h, &y);
    let mut y = rho.clone();
    y.add_scaled(full, &k3);
    let k4 = rhs(t + h, &y);

    let mut out = rho.clone();
    let w1 = Complex64::new(h / 6.0, 0.0);
    let w2 = Complex64::new(h / 3.0, 0.0);
    out.add_scaled(w1, &k1);
    out.add_scaled(w2, &k2);
    out.add_scaled(w2, &k3);
    out.add_scaled(w1, &k4);
    out
}

/// Integrates `dρ/dt = rhs(t, ρ)` over `t_span`, returning whatever was
/// computed before any failure.
pub fn rk4_integrate<F>(
    rhs: F,
    rho0: &OperatorMatrix,
    t_span: (f64, f64),
    options: &Rk4Options,
) -> Integration
where
    F: Fn(f64, &OperatorMatrix) -> OperatorMatrix,
{
    let mut trajectory = Trajectory::default();
    let (t0, t1) = t_span;
    if !(options.dt > 0.0 && options.dt.is_finite()) {
        return Integration {
            trajectory,
            failure: Some(IntegrationError::InvalidStep(options.dt)),
        };
    }
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Integration {
            trajectory,
            failure: Some(IntegrationError::InvalidSpan(t0, t1)),
        };
    }
    let n = step_count(t1 - t0, options.dt);
    let h = (t1 - t0) / n as f64;
    let trace0 = rho0.trace().re;

    trajectory.times.reserve(n + 1);
    trajectory.states.reserve(n + 1);
    trajectory.steps.reserve(n);
    trajectory.times.push(t0);
    trajectory.states.push(rho0.clone());

    let mut rho = rho0.clone();
    for step in 1..=n {
        let t = t0 + (step - 1) as f64 * h;
        let next = rk4_step(&rhs, t, &rho, h);
        let error_estimate = options.estimate_error.then(|| {
            let mid = rk4_step(&rhs, t, &rho, 0.5 * h);
            let fine = rk4_step(&rhs, t + 0.5 * h, &mid, 0.5 * h);
            (&fine - &next).max_abs()
        });
        if next.check_finite().is_err() {
            return Integration {
                trajectory,
                failure: Some(IntegrationError::NonFinite { step }),
            };
        }
        let scale = next.max_abs().max(f64::MIN_POSITIVE);
        let hermiticity_residual = next.hermiticity_residual() / scale;
        rho = next.hermitian_part();
        trajectory.times.push(t0 + step as f64 * h);
        trajectory.states.push(rho.clone());
        trajectory.steps.push(StepRecord {
            error_estimate,
            hermiticity_residual,
        });
        let drift = (rho.trace().re - trace0).abs();
        if drift > options.trace_tolerance {
            return Integration {
                trajectory,
                failure: Some(IntegrationError::TraceDrift { step, drift }),
            };
        }
    }
    Integration {
        trajectory,
        failure: None,
    }
}

/// Like [`rk4_integrate`] but discards the partial trajectory on failure.
pub fn rk4_evolve<F>(
    rhs: F,
    rho0: &OperatorMatrix,
    t_span: (f64, f64),
    options: &Rk4Options,
) -> Result<Trajectory, IntegrationError>
where
    F: Fn(f64, &OperatorMatrix) -> OperatorMatrix,
{
    let run = rk4_integrate(rhs, rho0, t_span, options);
    match run.failure {
        Some(e) => Err(e),
        None => Ok(run.trajectory),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorlab::{dissipator, Basis, DissipativeTerm, LindbladGenerator, Superoperator};

    fn decay_generator(rate: f64) -> LindbladGenerator {
        let b = Basis::new(["g", "e"]).unwrap();
        let term = DissipativeTerm {
            label: "decay".into(),
            rate,
            op: OperatorMatrix::transition(&b, 0, 1),
        };
        LindbladGenerator::new(OperatorMatrix::zeros(&b), vec![term]).unwrap()
    }

    fn excited(b: &Basis) -> OperatorMatrix {
        OperatorMatrix::transition(b, 1, 1)
    }

    #[test]
    fn coherent_rotation_keeps_coherence_magnitude() {
        let eps = 1.7;
        let b = Basis::numbered(2);
        let h = OperatorMatrix::diagonal(&b, &[0.0, eps]).unwrap();
        let g = LindbladGenerator::new(h, vec![]).unwrap();
        let half = Complex64::new(0.5, 0.0);
        let rho0 = OperatorMatrix::from_row_major(&b, vec![half; 4]).unwrap();
        let traj = rk4_evolve(|_, r| g.apply(r), &rho0, (0.0, 10.0), &Rk4Options::new(0.01)).unwrap();
        for (t, rho) in traj.times.iter().zip(&traj.states) {
            assert!((rho[(0, 1)].norm() - 0.5).abs() < 1e-8);
            // ρ01(t) = ½ e^{+iεt} for H = ε|1⟩⟨1|.
            let want = Complex64::from_polar(0.5, eps * t);
            assert!((rho[(0, 1)] - want).norm() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn exponential_decay_matches_analytic() {
        let rate = 1.0;
        let g = decay_generator(rate);
        let rho0 = excited(g.basis());
        let traj = rk4_evolve(|_, r| g.apply(r), &rho0, (0.0, 2.0), &Rk4Options::new(0.01)).unwrap();
        for target in [0.5, 1.0, 2.0] {
            let k = traj.times.iter().position(|&t| (t - target).abs() < 1e-9).unwrap();
            let p = traj.states[k].population(1);
            assert!((p - (-rate * target).exp()).abs() < 1e-6);
        }
    }

    fn decay_error(dt: f64) -> f64 {
        let g = decay_generator(1.0);
        let rho0 = excited(g.basis());
        let traj = rk4_evolve(|_, r| g.apply(r), &rho0, (0.0, 2.0), &Rk4Options::new(dt)).unwrap();
        traj.times
            .iter()
            .zip(&traj.states)
            .map(|(t, r)| (r.population(1) - (-t).exp()).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn halving_dt_gains_fourth_order() {
        let coarse = decay_error(0.2);
        let fine = decay_error(0.1);
        assert!(coarse / fine >= 14.0, "ratio {}", coarse / fine);
    }

    #[test]
    fn step_doubling_estimate_tracks_true_error() {
        let g = decay_generator(1.0);
        let rho0 = excited(g.basis());
        let traj = rk4_evolve(|_, r| g.apply(r), &rho0, (0.0, 1.0), &Rk4Options::new(0.1)).unwrap();
        let est = traj.steps[0].error_estimate.unwrap();
        let truth = (traj.states[1].population(1) - (-0.1f64).exp()).abs();
        // Local error of the half-step pair is ~1/16 of the single step, so
        // the estimate is within a small factor of the single-step error.
        assert!(est > 0.5 * truth && est < 2.0 * truth, "est {est}, truth {truth}");
    }

    #[test]
    fn trace_drift_aborts_with_step_index() {
        // A non-trace-preserving map: uniform loss.
        let b = Basis::numbered(2);
        let rho0 = OperatorMatrix::identity(&b).scale_real(0.5);
        let run = rk4_integrate(|_, r: &OperatorMatrix| r.scale_real(-1.0), &rho0, (0.0, 1.0), &Rk4Options::new(0.01));
        match run.failure {
            Some(IntegrationError::TraceDrift { step, .. }) => {
                assert_eq!(step, 1);
                assert_eq!(run.trajectory.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nan_aborts() {
        let b = Basis::numbered(2);
        let rho0 = OperatorMatrix::identity(&b).scale_real(0.5);
        let bad = |_: f64, r: &OperatorMatrix| {
            let mut out = OperatorMatrix::zeros(r.basis());
            out[(0, 1)] = Complex64::new(f64::NAN, 0.0);
            out
        };
        let err = rk4_evolve(bad, &rho0, (0.0, 1.0), &Rk4Options::new(0.1)).unwrap_err();
        assert_eq!(err, IntegrationError::NonFinite { step: 1 });
    }

    #[test]
    fn invalid_step_rejected() {
        let b = Basis::numbered(1);
        let rho0 = OperatorMatrix::identity(&b);
        let err = rk4_evolve(|_, r: &OperatorMatrix| r.clone(), &rho0, (0.0, 1.0), &Rk4Options::new(0.0)).unwrap_err();
        assert!(matches!(err, IntegrationError::InvalidStep(_)));
    }

    #[test]
    fn grid_is_uniform_and_hits_endpoint() {
        assert_eq!(step_count(2.5, 0.5), 5);
        assert_eq!(step_count(1.0, 0.3), 4);
        let b = Basis::new(["g", "e"]).unwrap();
        let rho0 = excited(&b);
        let l = OperatorMatrix::transition(&b, 0, 1);
        let traj = rk4_evolve(
            |_, r| dissipator(&l, r).unwrap(),
            &rho0,
            (0.0, 1.0),
            &Rk4Options::new(0.3),
        )
        .unwrap();
        assert_eq!(traj.len(), 5);
        assert!((traj.times[4] - 1.0).abs() < 1e-15);
    }
}
