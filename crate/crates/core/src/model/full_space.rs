//! The 27-state product space: each dot is spin-down, spin-up, or spin-up
//! with an exciton (the trion X⁺).

use num_complex::Complex64;

use super::{Configuration, PhysicalParams};
use crate::tensorlab::{Basis, OperatorMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DotState {
    Down,
    Up,
    Exciton,
}

impl DotState {
    fn code(self) -> usize {
        match self {
            Self::Down => 0,
            Self::Up => 1,
            Self::Exciton => 2,
        }
    }

    fn from_code(c: usize) -> Self {
        match c {
            0 => Self::Down,
            1 => Self::Up,
            _ => Self::Exciton,
        }
    }

    fn symbol(self) -> char {
        match self {
            Self::Down => 'd',
            Self::Up => 'u',
            Self::Exciton => 'X',
        }
    }

    /// Spin of the resident electron; an exciton sits on a spin-up dot.
    pub fn is_spin_up(self) -> bool {
        !matches!(self, Self::Down)
    }
}

pub const FULL_DIM: usize = 27;

/// Index of a product state, dot 1 most significant.
pub fn full_index(dots: [DotState; 3]) -> usize {
    dots[0].code() * 9 + dots[1].code() * 3 + dots[2].code()
}

pub fn full_state(index: usize) -> [DotState; 3] {
    [
        DotState::from_code(index / 9),
        DotState::from_code((index / 3) % 3),
        DotState::from_code(index % 3),
    ]
}

pub fn exciton_number(index: usize) -> usize {
    full_state(index)
        .iter()
        .filter(|d| **d == DotState::Exciton)
        .count()
}

/// Which dots carry spin up; conserved by the Hamiltonian and drive.
pub fn spin_pattern(index: usize) -> [bool; 3] {
    full_state(index).map(DotState::is_spin_up)
}

/// Labels like `"uXd"`.
pub fn full_basis() -> Basis {
    Basis::new((0..FULL_DIM).map(|i| full_state(i).iter().map(|d| d.symbol()).collect::<String>()))
        .expect("27 distinct labels")
}

/// `H₀ = ω_a Σ n_i + V_F Σ_⟨ij⟩ (c_i†c_j + h.c.) + V_xx Σ_⟨ij⟩ n_i n_j`
/// on the full product space.
///
/// Excitons live only on spin-up dots, so hopping moves an exciton between
/// two spin-up dots and never touches a spin-down one.
pub fn build_h0(params: &PhysicalParams, configuration: Configuration) -> OperatorMatrix {
    build_h0_shifted(params, configuration, 0.0)
}

/// `H₀ − ω_l N` with N the exciton number: the static part in a frame
/// rotating at the laser frequency.
pub(crate) fn build_h0_shifted(params: &PhysicalParams, configuration: Configuration, omega_l: f64) -> OperatorMatrix {
    let basis = full_basis();
    let mut h = OperatorMatrix::zeros(&basis);
    let pairs = configuration.coupled_pairs();
    for idx in 0..FULL_DIM {
        let dots = full_state(idx);
        let n = exciton_number(idx) as f64;
        let mut diag = (params.omega_a - omega_l) * n;
        for &(i, j) in pairs {
            if dots[i] == DotState::Exciton && dots[j] == DotState::Exciton {
                diag += params.v_xx;
            }
        }
        h[(idx, idx)] = Complex64::new(diag, 0.0);
        for &(i, j) in pairs {
            for (from, to) in [(i, j), (j, i)] {
                // c_to† c_from: exciton hops from `from` to `to`.
                if dots[from] == DotState::Exciton && dots[to] == DotState::Up {
                    let mut next = dots;
                    next[from] = DotState::Up;
                    next[to] = DotState::Exciton;
                    h[(full_index(next), idx)] += Complex64::new(params.v_f, 0.0);
                }
            }
        }
    }
    h
}

/// `Σ_j c_j†`: creates an exciton on any spin-up dot.
pub fn exciton_creation(basis: &Basis) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(basis);
    for idx in 0..FULL_DIM {
        let dots = full_state(idx);
        for j in 0..3 {
            if dots[j] == DotState::Up {
                let mut next = dots;
                next[j] = DotState::Exciton;
                m[(full_index(next), idx)] += Complex64::new(1.0, 0.0);
            }
        }
    }
    m
}

/// Full-space index of the single-exciton state `c_site† |↑↑↑⟩`.
pub fn single_exciton_index(site: usize) -> usize {
    let mut dots = [DotState::Up; 3];
    dots[site] = DotState::Exciton;
    full_index(dots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorlab::hermitian_eigen;

    fn uuu() -> usize {
        full_index([DotState::Up; 3])
    }

    #[test]
    fn index_round_trip() {
        for i in 0..FULL_DIM {
            assert_eq!(full_index(full_state(i)), i);
        }
        assert_eq!(full_basis().name(uuu()), "uuu");
    }

    #[test]
    fn h0_is_hermitian() {
        for cfg in [Configuration::Ring, Configuration::Line] {
            let h = build_h0(&PhysicalParams::default(), cfg);
            assert_eq!(h.hermiticity_residual(), 0.0);
        }
    }

    #[test]
    fn no_exciton_state_has_zero_energy() {
        let h = build_h0(&PhysicalParams::default(), Configuration::Ring);
        assert_eq!(h[(uuu(), uuu())], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn triple_exciton_ring_energy() {
        let p = PhysicalParams::default();
        let h = build_h0(&p, Configuration::Ring);
        let xxx = full_index([DotState::Exciton; 3]);
        assert!((h[(xxx, xxx)].re - (3.0 * p.omega_a + 3.0 * p.v_xx)).abs() < 1e-9);
        let hl = build_h0(&p, Configuration::Line);
        assert!((hl[(xxx, xxx)].re - (3.0 * p.omega_a + 2.0 * p.v_xx)).abs() < 1e-9);
    }

    fn single_exciton_block(cfg: Configuration) -> OperatorMatrix {
        let p = PhysicalParams::default();
        let h = build_h0(&p, cfg);
        let b = crate::tensorlab::Basis::numbered(3);
        OperatorMatrix::from_fn(&b, |a, c| h[(single_exciton_index(a), single_exciton_index(c))])
    }

    #[test]
    fn ring_single_exciton_levels() {
        let p = PhysicalParams::default();
        let e = hermitian_eigen(&single_exciton_block(Configuration::Ring)).unwrap();
        let want = [p.omega_a - p.v_f, p.omega_a - p.v_f, p.omega_a + 2.0 * p.v_f];
        for (got, want) in e.values.iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn line_single_exciton_levels() {
        let p = PhysicalParams::default();
        let s = std::f64::consts::SQRT_2 * p.v_f;
        let e = hermitian_eigen(&single_exciton_block(Configuration::Line)).unwrap();
        let want = [p.omega_a - s, p.omega_a, p.omega_a + s];
        for (got, want) in e.values.iter().zip(want) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
    }

    #[test]
    fn spin_pattern_conserved_by_h0_and_drive() {
        let p = PhysicalParams::default();
        let b = full_basis();
        for m in [build_h0(&p, Configuration::Ring), exciton_creation(&b)] {
            for r in 0..FULL_DIM {
                for c in 0..FULL_DIM {
                    if m[(r, c)].norm() != 0.0 {
                        assert_eq!(spin_pattern(r), spin_pattern(c));
                    }
                }
            }
        }
    }

    #[test]
    fn no_exciton_created_on_spin_down_dot() {
        let b = full_basis();
        let create = exciton_creation(&b);
        let ddd = full_index([DotState::Down; 3]);
        for r in 0..FULL_DIM {
            assert_eq!(create[(r, ddd)].norm(), 0.0);
        }
    }
}
