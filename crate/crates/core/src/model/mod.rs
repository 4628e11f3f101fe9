//! The physical system: parameters, geometry, exciton Hamiltonian and the
//! driven-sector eigenstructure.

mod frame;
pub mod full_space;
mod params;
mod sector;
mod setup;

use thiserror::Error;

pub use frame::{
    dressed_energies, dressed_hamiltonian, dressed_vector, drive_matrix_element,
    rotating_frame_hamiltonian, sector_index, simulation_basis, spectator_full_index,
    spectator_patterns, PSI1, SIM_DIM, SPECTATOR_COUNT,
};
pub use full_space::build_h0;
pub use params::{HierarchyWarning, PhysicalParams};
pub use sector::{analytic_eigenstates, auxiliary_index, dressed_basis, SectorBasis};
pub use setup::{character_factor, Configuration, GateSetup, RingLength, Transition};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("transition not available for ring")]
    TransitionUnavailable,
    #[error("unknown {kind} {value:?}")]
    UnknownName { kind: &'static str, value: String },
}
