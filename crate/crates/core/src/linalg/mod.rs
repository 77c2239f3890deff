//! Dense complex matrices and the spectral primitives built on them.

mod eigen;
mod matrix;
mod spectral;
mod tridiagonal;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen, MAX_SWEEPS};
pub use matrix::{sum_of, ComplexMatrix, C64};
pub use spectral::{
    abs_operator, hermitian_norm, operator_norm, operator_norm_squared, psd_eigenvalues, psd_sqrt, singular_values,
};

pub(crate) use tridiagonal::TridiagonalWorkspace;

/// `A*`; free-function form of [`ComplexMatrix::adjoint`].
pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

/// `(A + A*) / 2`.
pub fn real_part(a: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    a.real_part()
}

/// `(A - A*) / (2i)`.
pub fn imag_part(a: &ComplexMatrix) -> crate::Result<ComplexMatrix> {
    a.imag_part()
}
