//! Cyclic-by-row complex Jacobi for dense Hermitian matrices.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a Hermitian matrix, eigenvalues in non-increasing order.
/// Column `k` of `eigenvectors` belongs to `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let v = &self.eigenvectors;
        (0..v.rows()).map(|i| v.get(i, k)).collect()
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The input must satisfy `||H - H*||_F <= eig_tol * (1 + ||H||_F)`; the
/// Hermitian part is what actually gets diagonalized.
pub fn hermitian_eigen(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<HermitianEigen> {
    let n = h.ensure_square()?;
    check_hermitian(h, cfg.eig_tol)?;
    let mut a = symmetrized(h);
    let mut v = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = C64::new(1.0, 0.0);
    }
    jacobi_in_place(&mut a, n, Some(&mut v), cfg.eig_tol)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vecs = Vec::with_capacity(n * n);
    for row in 0..n {
        for &col in &order {
            vecs.push(v[row * n + col]);
        }
    }
    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors: ComplexMatrix::new(n, n, vecs)?,
    })
}

/// Eigenvalues only, non-increasing.
pub fn hermitian_eigenvalues(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let n = h.ensure_square()?;
    check_hermitian(h, cfg.eig_tol)?;
    let mut a = symmetrized(h);
    jacobi_in_place(&mut a, n, None, cfg.eig_tol)?;
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(values)
}

fn check_hermitian(h: &ComplexMatrix, eig_tol: f64) -> Result<()> {
    let deviation = h.hermitian_deviation();
    if deviation > eig_tol * (1.0 + h.frobenius_norm()) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn symmetrized(h: &ComplexMatrix) -> Vec<C64> {
    let n = h.rows();
    let mut a = vec![C64::new(0.0, 0.0); n * n];
    for i in 0..n {
        a[i * n + i] = C64::new(h.get(i, i).re, 0.0);
        for j in i + 1..n {
            let z = (h.get(i, j) + h.get(j, i).conj()) * 0.5;
            a[i * n + j] = z;
            a[j * n + i] = z.conj();
        }
    }
    a
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut acc = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            acc += a[p * n + q].norm_sqr();
        }
    }
    (2.0 * acc).sqrt()
}

/// Diagonalizes the Hermitian row-major buffer `a` in place. On success the
/// diagonal holds the (unsorted) eigenvalues; when `vectors` is given it is
/// right-multiplied by every rotation.
///
/// Each rotation acts on the pair `(p, q)` as `V = diag(1, e^{-i phi}) * G`,
/// with `a_pq = r e^{i phi}` and `G` the real rotation annihilating the
/// resulting real off-diagonal entry.
pub(crate) fn jacobi_in_place(a: &mut [C64], n: usize, mut vectors: Option<&mut [C64]>, tol: f64) -> Result<()> {
    debug_assert_eq!(a.len(), n * n);
    let threshold = tol * a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a, n) <= threshold {
            return Ok(());
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let phase_conj = phase.conj();
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;

                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sign / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let s_phase = phase_conj * s;
                let c_phase = phase_conj * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_kp = akp * c - akq * s_phase;
                    let new_kq = akp * s + akq * c_phase;
                    a[k * n + p] = new_kp;
                    a[k * n + q] = new_kq;
                    a[p * n + k] = new_kp.conj();
                    a[q * n + k] = new_kq.conj();
                }
                a[p * n + p] = C64::new(app - t * r, 0.0);
                a[q * n + q] = C64::new(aqq + t * r, 0.0);
                a[p * n + q] = C64::new(0.0, 0.0);
                a[q * n + p] = C64::new(0.0, 0.0);

                if let Some(v) = vectors.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * c - vkq * s_phase;
                        v[k * n + q] = vkp * s + vkq * c_phase;
                    }
                }
            }
        }
    }
    let residual = off_diagonal_norm(a, n);
    if residual <= threshold {
        Ok(())
    } else {
        Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        })
    }
}
