//! Commutators, Lindblad dissipators and generators of the form
//!
//! ```text
//! dρ/dt = −i[H, ρ] + Σ_k γ_k (L_k ρ L_k† − ½{L_k† L_k, ρ})
//! ```
//!
//! `H` here is already in angular-frequency units; callers divide energies
//! by ħ before building a generator.

use num_complex::Complex64;

use super::{Basis, OperatorMatrix, TensorError};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Linear map on density matrices.
pub trait Superoperator {
    fn basis(&self) -> &Basis;
    fn apply(&self, rho: &OperatorMatrix) -> OperatorMatrix;
}

/// `AB − BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix, TensorError> {
    let ab = a.try_mul(b)?;
    let ba = b.try_mul(a)?;
    ab.try_sub(&ba)
}

/// `D[L]ρ = LρL† − ½(L†Lρ + ρL†L)`.
pub fn dissipator(l: &OperatorMatrix, rho: &OperatorMatrix) -> Result<OperatorMatrix, TensorError> {
    l.same_basis(rho)?;
    let ld = l.dagger();
    let ldl = &ld * l;
    let mut out = &(l * rho) * &ld;
    out.add_scaled(Complex64::new(-0.5, 0.0), &(&ldl * rho));
    out.add_scaled(Complex64::new(-0.5, 0.0), &(rho * &ldl));
    Ok(out)
}

/// One dissipative term `rate · D[op]`.
#[derive(Clone, Debug)]
pub struct DissipativeTerm {
    pub label: String,
    /// Rate in inverse time units, `≥ 0`.
    pub rate: f64,
    pub op: OperatorMatrix,
}

/// Lindblad generator with a Hamiltonian part and a list of jump terms.
#[derive(Clone, Debug)]
pub struct LindbladGenerator {
    hamiltonian: OperatorMatrix,
    terms: Vec<DissipativeTerm>,
}

impl LindbladGenerator {
    pub fn new(hamiltonian: OperatorMatrix, terms: Vec<DissipativeTerm>) -> Result<Self, TensorError> {
        hamiltonian.check_finite()?;
        if !hamiltonian.is_hermitian() {
            return Err(TensorError::NotHermitian {
                residual: hamiltonian.hermiticity_residual(),
                scale: hamiltonian.max_abs(),
            });
        }
        for term in &terms {
            hamiltonian.same_basis(&term.op)?;
            if !(term.rate >= 0.0 && term.rate.is_finite()) {
                return Err(TensorError::InvalidRate {
                    label: term.label.clone(),
                    rate: term.rate,
                });
            }
        }
        Ok(Self { hamiltonian, terms })
    }

    pub fn hamiltonian(&self) -> &OperatorMatrix {
        &self.hamiltonian
    }

    pub fn terms(&self) -> &[DissipativeTerm] {
        &self.terms
    }

    /// Dense-to-sparse matrix of this generator acting on row-major `vec(ρ)`.
    pub fn to_sparse(&self) -> SparseSuperoperator {
        SparseSuperoperator::from_superoperator(self)
    }
}

impl Superoperator for LindbladGenerator {
    fn basis(&self) -> &Basis {
        self.hamiltonian.basis()
    }

    fn apply(&self, rho: &OperatorMatrix) -> OperatorMatrix {
        let mut out = commutator(&self.hamiltonian, rho)
            .expect("generator basis checked at construction")
            .scale(-I);
        for term in &self.terms {
            if term.rate == 0.0 {
                continue;
            }
            let d = dissipator(&term.op, rho).expect("generator basis checked at construction");
            out.add_scaled(Complex64::new(term.rate, 0.0), &d);
        }
        out
    }
}

/// Compressed-row superoperator on row-major `vec(ρ)`.
///
/// Built once per scenario by probing with matrix units `|i⟩⟨j|`, so it is
/// exact to rounding for any linear map.
#[derive(Clone, Debug)]
pub struct SparseSuperoperator {
    basis: Basis,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl SparseSuperoperator {
    pub fn from_superoperator<S: Superoperator + ?Sized>(op: &S) -> Self {
        let basis = op.basis().clone();
        let n = basis.dim();
        let n2 = n * n;
        let mut columns: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(n2);
        for i in 0..n {
            for j in 0..n {
                let image = op.apply(&OperatorMatrix::transition(&basis, i, j));
                let col = image
                    .as_slice()
                    .iter()
                    .enumerate()
                    .filter(|(_, z)| **z != Complex64::new(0.0, 0.0))
                    .map(|(r, &z)| (r, z))
                    .collect();
                columns.push(col);
            }
        }
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); n2];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, z) in col {
                rows[r].push((c, z));
            }
        }
        let mut row_ptr = Vec::with_capacity(n2 + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in rows {
            for (c, z) in row {
                cols.push(c);
                vals.push(z);
            }
            row_ptr.push(cols.len());
        }
        Self {
            basis,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }
}

impl Superoperator for SparseSuperoperator {
    fn basis(&self) -> &Basis {
        &self.basis
    }

    fn apply(&self, rho: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(rho.basis(), &self.basis, "superoperator basis mismatch");
        let x = rho.as_slice();
        let mut out = OperatorMatrix::zeros(&self.basis);
        let y = out.as_mut_slice();
        for (r, yr) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *yr = acc;
        }
        out
    }
}
