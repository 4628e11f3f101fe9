//! The eleven-state simulation basis and the rotating-frame Hamiltonian.
//!
//! Seven spectator qubit configurations (every spin pattern except
//! |↑↑↑⟩) are followed by the driven sector Ψ₁ … Ψ₄. Off-resonant sectors
//! and multi-exciton states are eliminated; the 27-state check of that
//! approximation lives in [`crate::oracle`].

use num_complex::Complex64;

use super::full_space::{full_index, DotState};
use super::{analytic_eigenstates, auxiliary_index, GateSetup, PhysicalParams, SectorBasis};
use crate::tensorlab::{Basis, OperatorMatrix};

pub const SIM_DIM: usize = 11;
pub const SPECTATOR_COUNT: usize = 7;
/// Simulation index of Ψ₁ = |↑↑↑⟩.
pub const PSI1: usize = 7;

/// Spin patterns of the spectators (true = ↑), dot 1 first, in binary
/// order with ↓ = 0.
pub fn spectator_patterns() -> [[bool; 3]; SPECTATOR_COUNT] {
    let mut out = [[false; 3]; SPECTATOR_COUNT];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = [k & 4 != 0, k & 2 != 0, k & 1 != 0];
    }
    out
}

/// Full-space index of spectator `k`.
pub fn spectator_full_index(k: usize) -> usize {
    let p = spectator_patterns()[k];
    full_index(p.map(|up| if up { DotState::Up } else { DotState::Down }))
}

/// Simulation index of Ψ_k, k = 1 … 4.
pub fn sector_index(k: usize) -> usize {
    assert!((1..=4).contains(&k), "sector states are Psi1..Psi4");
    PSI1 + k - 1
}

pub fn simulation_basis(setup: &GateSetup) -> Basis {
    let sector = analytic_eigenstates(setup);
    let spectators = spectator_patterns()
        .map(|p| p.iter().map(|&up| if up { 'u' } else { 'd' }).collect::<String>());
    Basis::new(
        spectators
            .into_iter()
            .chain(sector.labels.iter().map(|s| s.to_string())),
    )
    .expect("distinct labels")
}

/// Dressed state Φ_k (k = 1 … 4) as an 11-component vector.
pub fn dressed_vector(sector: &SectorBasis, k: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); SIM_DIM];
    for (r, &x) in sector.dressed(k).iter().enumerate() {
        v[PSI1 + r] = Complex64::new(x, 0.0);
    }
    v
}

/// `(Ω/2) ⟨Ψ_s| Σ_j c_j† |↑↑↑⟩`, computed from the eigenvector amplitudes
/// rather than from the tabulated α.
pub fn drive_matrix_element(params: &PhysicalParams, setup: &GateSetup) -> f64 {
    let sector = analytic_eigenstates(setup);
    let aux = auxiliary_index(setup);
    0.5 * params.omega * sector.bright_amplitudes()[aux - 2]
}

/// Static Hamiltonian in the frame rotating at ω_l (meV).
///
/// Spectators and Ψ₁ sit at zero, the auxiliary state is resonant, the
/// other two exciton eigenstates carry their detunings from ω_l, and
/// `αΩ/2` couples Ψ₁ to the auxiliary state.
pub fn rotating_frame_hamiltonian(params: &PhysicalParams, setup: &GateSetup) -> OperatorMatrix {
    let basis = simulation_basis(setup);
    let sector = analytic_eigenstates(setup);
    let mut h = OperatorMatrix::zeros(&basis);
    for (k, e) in sector.exciton_energies(params).iter().enumerate() {
        let i = sector_index(k + 2);
        h[(i, i)] = Complex64::new(e - setup.omega_l, 0.0);
    }
    let aux = sector_index(auxiliary_index(setup));
    // Exactly zero at resonance rather than ω_a + s V_F − ω_l rounding.
    h[(aux, aux)] = Complex64::new(0.0, 0.0);
    let g = Complex64::new(0.5 * setup.alpha * params.omega, 0.0);
    h[(PSI1, aux)] = g;
    h[(aux, PSI1)] = g;
    h
}

/// `⟨Φ_a|H|Φ_b⟩` over the driven sector, labelled Phi1 … Phi4.
pub fn dressed_hamiltonian(params: &PhysicalParams, setup: &GateSetup) -> OperatorMatrix {
    let h = rotating_frame_hamiltonian(params, setup);
    let sector = analytic_eigenstates(setup);
    let vecs: Vec<Vec<Complex64>> = (1..=4).map(|k| dressed_vector(&sector, k)).collect();
    let basis = Basis::new(["Phi1", "Phi2", "Phi3", "Phi4"]).expect("distinct labels");
    OperatorMatrix::from_fn(&basis, |a, b| {
        let hb = h.apply(&vecs[b]);
        vecs[a].iter().zip(&hb).map(|(x, y)| x.conj() * y).sum()
    })
}

/// Diagonal of [`dressed_hamiltonian`] (meV).
pub fn dressed_energies(params: &PhysicalParams, setup: &GateSetup) -> [f64; 4] {
    let h = dressed_hamiltonian(params, setup);
    [0, 1, 2, 3].map(|k| h[(k, k)].re)
}
