//! Simulation of a one-step three-qubit controlled-phase gate on three
//! Förster-coupled quantum dots.
//!
//! The crate is layered bottom-up:
//!
//! - [`tensorlab`]: dense complex matrices, a Hermitian eigensolver,
//!   Lindblad superoperators and a fixed-step RK4 integrator.
//! - [`model`]: physical parameters, ring and line geometries, the exciton
//!   Hamiltonian, its single-exciton eigenstates and the dressed basis.
//! - [`phonon`]: acoustic-phonon spectral densities and the Lindblad channel
//!   list for each configuration.
//! - [`dynamics`]: the master equation on the eleven-state simulation basis.
//! - [`gate`]: initial and target states, gate timing, fidelity
//!   trajectories and the figure presets.
//! - [`oracle`]: a 27-state brute-force check of the effective model.
//!
//! All quantities use meV, ps, nm and K; see [`units`].

pub mod dynamics;
pub mod gate;
pub mod model;
pub mod oracle;
pub mod phonon;
pub mod tensorlab;
pub mod units;
