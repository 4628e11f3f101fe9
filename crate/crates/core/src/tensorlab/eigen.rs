//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Every matrix in this crate has dimension at most 27, so the quadratic
//! convergence of Jacobi sweeps is plenty and the eigenvectors come out
//! orthonormal to machine precision even inside degenerate subspaces.

use num_complex::Complex64;

use super::{OperatorMatrix, TensorError};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching orthonormal eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    /// `vectors[k]` is the eigenvector belonging to `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// Largest `‖A v_k − λ_k v_k‖` over all pairs.
    pub fn max_residual(&self, a: &OperatorMatrix) -> f64 {
        self.values
            .iter()
            .zip(&self.vectors)
            .map(|(&lambda, v)| {
                a.apply(v)
                    .iter()
                    .zip(v)
                    .map(|(&av, &vi)| (av - vi * lambda).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// `max |V†V − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                let dot: Complex64 = self.vectors[a]
                    .iter()
                    .zip(&self.vectors[b])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Rejects input whose anti-Hermitian part exceeds `1e-12 · max|A|`; the
/// error carries that residual.
pub fn hermitian_eigen(a: &OperatorMatrix) -> Result<EigenDecomposition, TensorError> {
    a.check_finite()?;
    let scale = a.max_abs();
    let residual = a.hermiticity_residual();
    if residual > 1e-12 * scale {
        return Err(TensorError::NotHermitian { residual, scale });
    }
    let n = a.dim();
    let mut m: Vec<Complex64> = a.hermitian_part().as_slice().to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let off_norm = |m: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let total = a.frobenius_norm();
    let tol = f64::EPSILON * total.max(f64::MIN_POSITIVE);

    let mut converged = n < 2 || off_norm(&m) <= tol;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
        sweeps += 1;
        converged = off_norm(&m) <= tol;
    }
    if !converged {
        return Err(TensorError::NoConvergence { sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].re.total_cmp(&m[j * n + j].re));
    let values = order.iter().map(|&k| m[k * n + k].re).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok(EigenDecomposition { values, vectors })
}

// One Jacobi rotation zeroing m[p][q]. The unitary is a phase on column q
// (making the pivot real) followed by the classic real rotation.
fn rotate(m: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let apq = m[p * n + q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    // Skip pivots already negligible against both diagonals.
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[p * n + q] = Complex64::new(0.0, 0.0);
        m[q * n + p] = Complex64::new(0.0, 0.0);
        return;
    }
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let pc = phase.conj();
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = pc * -s;
    let g_qq = pc * c;

    for k in 0..n {
        let akp = m[k * n + p];
        let akq = m[k * n + q];
        m[k * n + p] = akp * g_pp + akq * g_qp;
        m[k * n + q] = akp * g_pq + akq * g_qq;
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * g_pp + vkq * g_qp;
        v[k * n + q] = vkp * g_pq + vkq * g_qq;
    }
    for k in 0..n {
        let apk = m[p * n + k];
        let aqk = m[q * n + k];
        m[p * n + k] = g_pp.conj() * apk + g_qp.conj() * aqk;
        m[q * n + k] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    m[p * n + q] = Complex64::new(0.0, 0.0);
    m[q * n + p] = Complex64::new(0.0, 0.0);
    m[p * n + p] = Complex64::new(m[p * n + p].re, 0.0);
    m[q * n + q] = Complex64::new(m[q * n + q].re, 0.0);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorlab::Basis;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_its_own_eigenbasis() {
        let b = Basis::numbered(4);
        let e = hermitian_eigen(&OperatorMatrix::identity(&b)).unwrap();
        assert_eq!(e.values, vec![1.0; 4]);
        for (k, v) in e.vectors.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                let want = if i == k { 1.0 } else { 0.0 };
                assert!((x - c(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn diagonal_values_sorted() {
        let b = Basis::numbered(3);
        let a = OperatorMatrix::diagonal(&b, &[2.0, -1.0, 0.0]).unwrap();
        let e = hermitian_eigen(&a).unwrap();
        assert_eq!(e.values, vec![-1.0, 0.0, 2.0]);
    }

    #[test]
    fn two_by_two_rabi_split() {
        // [[0, g], [g, 0]] has eigenpairs ∓g with (1, ∓1)/√2.
        let g = 0.0866;
        let b = Basis::numbered(2);
        let a = OperatorMatrix::from_real_rows(&b, &[&[0.0, g], &[g, 0.0]]).unwrap();
        let e = hermitian_eigen(&a).unwrap();
        assert!((e.values[0] + g).abs() < 1e-15);
        assert!((e.values[1] - g).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // Eigenvectors are fixed up to a global phase; compare |⟨expected|v⟩|.
        let overlap = |v: &[Complex64], w: [f64; 2]| (v[0] * w[0] + v[1] * w[1]).norm();
        assert!((overlap(&e.vectors[0], [h, -h]) - 1.0).abs() < 1e-14);
        assert!((overlap(&e.vectors[1], [h, h]) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_pivot_handled() {
        // Pauli Y: eigenvalues ∓1.
        let b = Basis::numbered(2);
        let y = OperatorMatrix::from_row_major(&b, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        let e = hermitian_eigen(&y).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
        assert!(e.max_residual(&y) < 1e-14);
    }

    #[test]
    fn non_hermitian_rejected_with_residual() {
        let b = Basis::numbered(2);
        let a = OperatorMatrix::from_real_rows(&b, &[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        match hermitian_eigen(&a) {
            Err(TensorError::NotHermitian { residual, .. }) => assert!((residual - 1.0).abs() < 1e-15),
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn zero_matrix_is_fine() {
        let b = Basis::numbered(3);
        let e = hermitian_eigen(&OperatorMatrix::zeros(&b)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
    }

    fn hermitian_strategy(n: usize) -> impl Strategy<Value = OperatorMatrix> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |raw| {
            let b = Basis::numbered(n);
            let m = OperatorMatrix::from_fn(&b, |i, j| c(raw[i * n + j].0, raw[i * n + j].1));
            m.hermitian_part()
        })
    }

    proptest! {
        #[test]
        fn residual_and_orthonormality_bounds(a in (1usize..12).prop_flat_map(hermitian_strategy)) {
            let e = hermitian_eigen(&a).unwrap();
            let norm = a.frobenius_norm().max(1e-300);
            prop_assert!(e.max_residual(&a) <= 1e-10 * norm);
            prop_assert!(e.orthonormality_error() <= 1e-10);
            prop_assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        }

        #[test]
        fn degenerate_spectra_stay_orthonormal(shift in -2.0f64..2.0, n in 2usize..8) {
            // Projector-plus-shift: one eigenvalue 1+shift, n-1 copies of shift.
            let b = Basis::numbered(n);
            let amp = c(1.0 / (n as f64).sqrt(), 0.0);
            let mut a = OperatorMatrix::outer(&b, &vec![amp; n], &vec![amp; n]);
            a += &OperatorMatrix::identity(&b).scale_real(shift);
            let e = hermitian_eigen(&a).unwrap();
            prop_assert!(e.orthonormality_error() <= 1e-12);
            prop_assert!((e.values[n - 1] - (1.0 + shift)).abs() < 1e-12);
            for k in 0..n - 1 {
                prop_assert!((e.values[k] - shift).abs() < 1e-12);
            }
        }
    }
}
