use super::eigen::{hermitian_eigen, jacobi_in_place};
use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerance::ToleranceConfig;

// Spectral routines without a caller-supplied config use the default
// eigensolver threshold.
fn default_eig_tol() -> f64 {
    ToleranceConfig::default().eig_tol
}

/// Unsorted eigenvalues of a matrix known to be Hermitian by construction.
/// Jacobi is run even if it hits the sweep cap; after 100 sweeps the diagonal
/// is accurate to far below any tolerance used here.
fn trusted_hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let mut a = h.entries().to_vec();
    let _ = jacobi_in_place(&mut a, n, None, default_eig_tol());
    (0..n).map(|i| a[i * n + i].re).collect()
}

/// Singular values in non-increasing order, `min(rows, cols)` of them,
/// computed as square roots of the eigenvalues of `A* A` (or `A A*` when that
/// is the smaller Gram matrix).
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let gram = if a.cols() <= a.rows() {
        a.gram()
    } else {
        a.adjoint().gram()
    };
    let mut values: Vec<f64> = trusted_hermitian_eigenvalues(&gram)
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    values.sort_by(|x, y| y.total_cmp(x));
    values
}

/// Operator (spectral) norm: the largest singular value.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    singular_values(a)[0]
}

/// Squared operator norm, `lambda_max(A* A)`, without the square root round trip.
pub fn operator_norm_squared(a: &ComplexMatrix) -> f64 {
    let gram = if a.cols() <= a.rows() {
        a.gram()
    } else {
        a.adjoint().gram()
    };
    trusted_hermitian_eigenvalues(&gram).into_iter().fold(0.0, f64::max)
}

/// Norm of a Hermitian matrix, `max(|lambda_max|, |lambda_min|)`, read off its
/// spectrum directly.
pub fn hermitian_norm(h: &ComplexMatrix) -> Result<f64> {
    h.ensure_square()?;
    Ok(trusted_hermitian_eigenvalues(h)
        .into_iter()
        .map(f64::abs)
        .fold(0.0, f64::max))
}

/// Eigenvalues of a Hermitian matrix clamped at zero, non-increasing.
/// Negative eigenvalues below `-eig_tol * ||H||` are rejected.
pub fn psd_eigenvalues(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let e = hermitian_eigen(h, cfg)?;
    let scale = e.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    let min = e.min();
    if min < -cfg.eig_tol * scale {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    Ok(e.eigenvalues.into_iter().map(|x| x.max(0.0)).collect())
}

/// PSD square root of a Hermitian positive semidefinite matrix.
pub fn psd_sqrt(h: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    let n = h.ensure_square()?;
    let e = hermitian_eigen(h, cfg)?;
    let scale = e.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
    if e.min() < -cfg.eig_tol * scale {
        return Err(Error::NotPsd {
            min_eigenvalue: e.min(),
        });
    }
    let roots: Vec<f64> = e.eigenvalues.iter().map(|x| x.max(0.0).sqrt()).collect();
    let v = &e.eigenvectors;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut acc = C64::new(0.0, 0.0);
            for (k, &r) in roots.iter().enumerate() {
                acc += v.get(i, k) * v.get(j, k).conj() * r;
            }
            out.set(i, j, acc);
            out.set(j, i, acc.conj());
        }
        let d = out.get(i, i);
        out.set(i, i, C64::new(d.re, 0.0));
    }
    Ok(out)
}

/// `|A| = (A* A)^{1/2}`.
pub fn abs_operator(a: &ComplexMatrix, cfg: &ToleranceConfig) -> Result<ComplexMatrix> {
    psd_sqrt(&a.gram(), cfg)
}
