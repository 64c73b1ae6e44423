//! Dense complex linear algebra for operators on the three-qubit space.
//!
//! Everything here is a pure function of its inputs. The largest object is
//! the 64x64 Liouvillian, so all kernels are dense and unblocked.

mod eig;
mod matrix;
mod ops;
mod schur;
mod svd;

pub use eig::{hermitian_eig, hermitian_eigenvalues, EigenSystem};
pub use matrix::{inner, kron, vec_norm, ComplexMatrix};
pub use ops::{basis_ket, partial_trace, partial_transpose, psd_sqrt};
pub use schur::eigenvalues;
pub use svd::{svd, Svd};

/// Kronecker product of a list of factors, left to right.
pub fn kron_all<T: crate::Real>(factors: &[&ComplexMatrix<T>]) -> ComplexMatrix<T> {
    let mut out = factors[0].clone();
    for f in &factors[1..] {
        out = kron(&out, f);
    }
    out
}
