//! Closed-form eigenstructure of the driven |↑↑↑⟩ sector.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use super::{Configuration, GateSetup, PhysicalParams, Transition};

const SQRT_3: f64 = 1.732_050_807_568_877_2;
const SQRT_6: f64 = 2.449_489_742_783_178;

/// The four driven-sector states: the exciton vacuum Ψ₁ = |↑↑↑⟩ and the
/// three single-exciton eigenstates, ordered by energy.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorBasis {
    pub configuration: Configuration,
    /// Ψ₁ … Ψ₄; a trailing `*` marks the states antisymmetric under
    /// exchanging the outer dots.
    pub labels: [&'static str; 4],
    /// Row k: amplitudes of exciton eigenstate Ψ_{k+2} on `c_1†|↑↑↑⟩`,
    /// `c_2†|↑↑↑⟩`, `c_3†|↑↑↑⟩`.
    pub bare_to_eigen: [[f64; 3]; 3],
    /// Energy of each exciton eigenstate relative to ω_a, in units of V_F.
    pub shifts: [f64; 3],
    /// Column k: dressed state Φ_{k+1} in the (Ψ₁ … Ψ₄) basis.
    pub eigen_to_dressed: [[f64; 4]; 4],
}

impl SectorBasis {
    /// Exciton eigenstate energies (meV).
    pub fn exciton_energies(&self, params: &PhysicalParams) -> [f64; 3] {
        self.shifts.map(|s| params.omega_a + s * params.v_f)
    }

    /// Dressed state Φ_k (k = 1 … 4) in Ψ coordinates.
    pub fn dressed(&self, k: usize) -> [f64; 4] {
        let col = k - 1;
        [0, 1, 2, 3].map(|r| self.eigen_to_dressed[r][col])
    }

    /// `⟨Ψ_k|Σ_j c_j†|↑↑↑⟩` for the exciton eigenstates k = 2, 3, 4.
    pub fn bright_amplitudes(&self) -> [f64; 3] {
        self.bare_to_eigen.map(|row| row.iter().sum())
    }
}

/// Closed-form single-exciton eigenstates for the configuration.
pub fn analytic_eigenstates(setup: &GateSetup) -> SectorBasis {
    let (labels, bare_to_eigen, shifts) = match setup.configuration {
        Configuration::Ring => (
            ["Psi1", "Psi2*", "Psi3*", "Psi4"],
            [
                [1.0 / SQRT_6, -2.0 / SQRT_6, 1.0 / SQRT_6],
                [-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2],
                [1.0 / SQRT_3, 1.0 / SQRT_3, 1.0 / SQRT_3],
            ],
            [-1.0, -1.0, 2.0],
        ),
        Configuration::Line => (
            ["Psi1", "Psi2", "Psi3*", "Psi4"],
            [
                [0.5, -FRAC_1_SQRT_2, 0.5],
                [-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2],
                [0.5, FRAC_1_SQRT_2, 0.5],
            ],
            [-SQRT_2, 0.0, SQRT_2],
        ),
    };
    SectorBasis {
        configuration: setup.configuration,
        labels,
        bare_to_eigen,
        shifts,
        eigen_to_dressed: dressed_basis(setup),
    }
}

/// Position (1 … 4) of the auxiliary state Ψ_s within Ψ₁ … Ψ₄.
pub fn auxiliary_index(setup: &GateSetup) -> usize {
    match setup.transition {
        Transition::HighLevel => 4,
        Transition::LowLevel => 2,
    }
}

/// Unitary taking Ψ₁ … Ψ₄ to the dressed states Φ₁ … Φ₄ (columns).
///
/// The resonant pair becomes `(Ψ₁ ∓ Ψ_s)/√2` at dressed energies `∓αΩ/2`.
/// With Ψ_s = Ψ₄ these are Φ₁ and Φ₄; with Ψ_s = Ψ₂ (line, low level) they
/// are Φ₁ and Φ₂. The two untouched eigenstates keep their positions.
pub fn dressed_basis(setup: &GateSetup) -> [[f64; 4]; 4] {
    let h = FRAC_1_SQRT_2;
    match setup.transition {
        Transition::HighLevel => [
            [h, 0.0, 0.0, h],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [-h, 0.0, 0.0, h],
        ],
        Transition::LowLevel => [
            [h, h, 0.0, 0.0],
            [-h, h, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::full_space::{build_h0, single_exciton_index};
    use crate::model::PhysicalParams;

    fn gram<const N: usize, const M: usize>(rows: &[[f64; N]; M]) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..M {
            for b in 0..M {
                let dot: f64 = (0..N).map(|k| rows[a][k] * rows[b][k]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - want).abs());
            }
        }
        worst
    }

    fn transpose(m: &[[f64; 4]; 4]) -> [[f64; 4]; 4] {
        let mut t = [[0.0; 4]; 4];
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                t[j][i] = x;
            }
        }
        t
    }

    #[test]
    fn ring_bright_state_is_symmetric() {
        let s = analytic_eigenstates(&GateSetup::all(&PhysicalParams::default())[0]);
        for x in s.bare_to_eigen[2] {
            assert!((x - 1.0 / SQRT_3).abs() < 1e-15);
        }
    }

    #[test]
    fn line_low_state_coefficients() {
        let s = analytic_eigenstates(&GateSetup::all(&PhysicalParams::default())[2]);
        assert_eq!(s.bare_to_eigen[0], [0.5, -SQRT_2 / 2.0, 0.5]);
    }

    #[test]
    fn eigenvectors_orthonormal() {
        for setup in GateSetup::all(&PhysicalParams::default()) {
            let s = analytic_eigenstates(&setup);
            assert!(gram(&s.bare_to_eigen) < 1e-12);
            assert!(gram(&transpose(&s.eigen_to_dressed)) < 1e-12);
        }
    }

    #[test]
    fn analytic_vectors_diagonalize_h0() {
        // ⟨Ψ_a|H₀|Ψ_b⟩ = δ_ab (ω_a + shift_a V_F)
        let p = PhysicalParams::default();
        for setup in GateSetup::all(&p) {
            let h = build_h0(&p, setup.configuration);
            let s = analytic_eigenstates(&setup);
            let energies = s.exciton_energies(&p);
            for a in 0..3 {
                for b in 0..3 {
                    let mut acc = 0.0;
                    for i in 0..3 {
                        for j in 0..3 {
                            acc += s.bare_to_eigen[a][i]
                                * h[(single_exciton_index(i), single_exciton_index(j))].re
                                * s.bare_to_eigen[b][j];
                        }
                    }
                    let want = if a == b { energies[a] } else { 0.0 };
                    assert!((acc - want).abs() < 1e-10, "{} ({a},{b}): {acc} vs {want}", setup.name());
                }
            }
        }
    }

    #[test]
    fn ring_antisymmetric_states_are_dark() {
        let s = analytic_eigenstates(&GateSetup::all(&PhysicalParams::default())[0]);
        let amps = s.bright_amplitudes();
        assert!(amps[0].abs() < 1e-15 && amps[1].abs() < 1e-15);
    }

    #[test]
    fn ring_dressed_pair() {
        let s = analytic_eigenstates(&GateSetup::all(&PhysicalParams::default())[0]);
        let h = FRAC_1_SQRT_2;
        assert_eq!(s.dressed(1), [h, 0.0, 0.0, -h]);
        assert_eq!(s.dressed(4), [h, 0.0, 0.0, h]);
        assert_eq!(s.dressed(2), [0.0, 1.0, 0.0, 0.0]);
        assert_eq!(s.dressed(3), [0.0, 0.0, 1.0, 0.0]);
    }
}
