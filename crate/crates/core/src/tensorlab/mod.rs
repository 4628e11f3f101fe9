//! Small dense complex linear algebra and time stepping.
//!
//! Everything here is sized for matrices of dimension ≤ 27: a labeled
//! basis, a row-major complex matrix, a Jacobi Hermitian eigensolver,
//! Lindblad superoperators and a fixed-step RK4 integrator.

mod basis;
mod eigen;
mod matrix;
mod rk4;
mod superop;

use thiserror::Error;

pub use basis::{Basis, BasisLabel};
pub use eigen::{hermitian_eigen, EigenDecomposition};
pub use matrix::OperatorMatrix;
pub use rk4::{
    rk4_evolve, rk4_integrate, rk4_step, step_count, Integration, IntegrationError, Rk4Options,
    StepRecord, Trajectory,
};
pub use superop::{
    commutator, dissipator, DissipativeTerm, LindbladGenerator, SparseSuperoperator, Superoperator,
};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TensorError {
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("basis must contain at least one label")]
    EmptyBasis,
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: String, right: String },
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("matrix is not Hermitian: max|A - A†| = {residual:e} (max|A| = {scale:e})")]
    NotHermitian { residual: f64, scale: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("rate for term {label:?} must be finite and non-negative, got {rate}")]
    InvalidRate { label: String, rate: f64 },
}
