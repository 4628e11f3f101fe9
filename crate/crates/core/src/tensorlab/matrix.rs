use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{Basis, TensorError};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex square matrix over a labeled basis, stored row-major.
///
/// Used for Hamiltonians, density matrices and jump operators alike. The
/// arithmetic operators panic on a basis mismatch; the `try_*` methods
/// report it as an error instead.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    basis: Basis,
    data: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(basis: &Basis) -> Self {
        let n = basis.dim();
        Self {
            basis: basis.clone(),
            data: vec![ZERO; n * n],
        }
    }

    pub fn identity(basis: &Basis) -> Self {
        let mut m = Self::zeros(basis);
        for i in 0..m.dim() {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(basis: &Basis, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let n = basis.dim();
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self {
            basis: basis.clone(),
            data,
        }
    }

    /// Builds a matrix from row-major entries, rejecting wrong sizes and
    /// non-finite values.
    pub fn from_row_major(basis: &Basis, data: Vec<Complex64>) -> Result<Self, TensorError> {
        let n = basis.dim();
        if data.len() != n * n {
            return Err(TensorError::Shape {
                expected: n * n,
                found: data.len(),
            });
        }
        let m = Self {
            basis: basis.clone(),
            data,
        };
        m.check_finite()?;
        Ok(m)
    }

    pub fn from_real_rows(basis: &Basis, rows: &[&[f64]]) -> Result<Self, TensorError> {
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_row_major(basis, data)
    }

    pub fn diagonal(basis: &Basis, diag: &[f64]) -> Result<Self, TensorError> {
        if diag.len() != basis.dim() {
            return Err(TensorError::Shape {
                expected: basis.dim(),
                found: diag.len(),
            });
        }
        let mut m = Self::zeros(basis);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    /// `|ket⟩⟨bra|` for two amplitude vectors over `basis`.
    pub fn outer(basis: &Basis, ket: &[Complex64], bra: &[Complex64]) -> Self {
        assert_eq!(ket.len(), basis.dim());
        assert_eq!(bra.len(), basis.dim());
        Self::from_fn(basis, |i, j| ket[i] * bra[j].conj())
    }

    /// `|a⟩⟨b|` between two basis vectors.
    pub fn transition(basis: &Basis, a: usize, b: usize) -> Self {
        let mut m = Self::zeros(basis);
        m[(a, b)] = ONE;
        m
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        let n = self.dim();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim();
        Self::from_fn(&self.basis, |i, j| self.data[j * n + i].conj())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            basis: self.basis.clone(),
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: Complex64, other: &Self) {
        self.assert_same_basis(other);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A - A†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let d = self.data[i * n + j] - self.data[j * n + i].conj();
                worst = worst.max(d.norm());
            }
        }
        worst
    }

    /// Hermitian within `1e-12 · max|A|`.
    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_residual() <= 1e-12 * self.max_abs()
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim();
        Self::from_fn(&self.basis, |i, j| {
            (self.data[i * n + j] + self.data[j * n + i].conj()) * 0.5
        })
    }

    /// `tr(ρ²)`, real part.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self.data[i * n + j] * self.data[j * n + i]).re;
            }
        }
        acc
    }

    /// `⟨v|A|v⟩`.
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        let n = self.dim();
        assert_eq!(v.len(), n);
        let mut acc = ZERO;
        for i in 0..n {
            let mut row = ZERO;
            for j in 0..n {
                row += self.data[i * n + j] * v[j];
            }
            acc += v[i].conj() * row;
        }
        acc
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn population(&self, i: usize) -> f64 {
        self[(i, i)].re
    }

    pub fn check_finite(&self) -> Result<(), TensorError> {
        if self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(TensorError::NonFinite)
        }
    }

    pub fn same_basis(&self, other: &Self) -> Result<(), TensorError> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(TensorError::BasisMismatch {
                left: self.basis.to_string(),
                right: other.basis.to_string(),
            })
        }
    }

    fn assert_same_basis(&self, other: &Self) {
        if let Err(e) = self.same_basis(other) {
            panic!("{e}");
        }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.same_basis(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.same_basis(rhs)?;
        let mut out = self.clone();
        out.add_scaled(ONE, rhs);
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, TensorError> {
        self.same_basis(rhs)?;
        let mut out = self.clone();
        out.add_scaled(-ONE, rhs);
        Ok(out)
    }

    // Skips zero entries of the left factor; the operators here are
    // mostly sparse.
    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let n = self.dim();
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        Self {
            basis: self.basis.clone(),
            data: out,
        }
    }

    /// Same matrix relabeled onto another basis of equal dimension.
    pub fn with_basis(&self, basis: &Basis) -> Result<Self, TensorError> {
        if basis.dim() != self.dim() {
            return Err(TensorError::Shape {
                expected: self.dim(),
                found: basis.dim(),
            });
        }
        Ok(Self {
            basis: basis.clone(),
            data: self.data.clone(),
        })
    }
}

impl Index<(usize, usize)> for OperatorMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim() + j]
    }
}

impl IndexMut<(usize, usize)> for OperatorMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        let n = self.dim();
        &mut self.data[i * n + j]
    }
}

impl Mul for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        self.assert_same_basis(rhs);
        self.mul_unchecked(rhs)
    }
}

impl Add for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        let mut out = self.clone();
        out.add_scaled(ONE, rhs);
        out
    }
}

impl Sub for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        let mut out = self.clone();
        out.add_scaled(-ONE, rhs);
        out
    }
}

impl AddAssign<&OperatorMatrix> for OperatorMatrix {
    fn add_assign(&mut self, rhs: &OperatorMatrix) {
        self.add_scaled(ONE, rhs);
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;

    fn neg(self) -> OperatorMatrix {
        self.scale(-ONE)
    }
}
