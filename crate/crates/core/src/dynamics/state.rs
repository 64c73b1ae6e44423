use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix};
use crate::scalar::{Cx, Real};

/// Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity, each to `1e-10`.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let tol = T::tol(1e-10);
        if !matrix.is_square() {
            return Err(Error::InvalidState(format!("{}x{} is not square", matrix.rows(), matrix.cols())));
        }
        let dev = matrix.hermitian_deviation();
        if dev > tol {
            return Err(Error::InvalidState(format!("anti-Hermitian part {:e}", dev.to_f64_lossy())));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidState(format!("trace {} + {}i", tr.re, tr.im)));
        }
        let matrix = matrix.hermitian_part();
        let lowest = hermitian_eig(&matrix)?.values[0];
        if lowest < -tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {:e}", lowest.to_f64_lossy())));
        }
        Ok(Self { matrix })
    }

    /// Hermitizes, clamps eigenvalues in `[-1e-10, 0)` to zero and
    /// renormalizes the trace. Larger negative eigenvalues are an error.
    pub fn from_numerical(matrix: &ComplexMatrix<T>) -> Result<Self> {
        let tr = matrix.trace();
        if tr.norm() <= T::min_positive_value() {
            return Err(Error::InvalidState("zero trace".into()));
        }
        let mut m = matrix.scale(Cx::new(T::one(), T::zero()) / tr).hermitian_part();
        let e = hermitian_eig(&m)?;
        let lowest = e.values[0];
        if lowest < -T::tol(1e-10) {
            return Err(Error::InvalidState(format!("negative eigenvalue {:e}", lowest.to_f64_lossy())));
        }
        if lowest < T::zero() {
            m = e.reconstruct_with(|x| x.max(T::zero()));
            let tr = m.trace().re;
            m = m.scale_real(T::one() / tr).hermitian_part();
        }
        Ok(Self { matrix: m })
    }

    /// Projector onto a normalized pure state.
    pub fn pure(psi: &[Cx<T>]) -> Result<Self> {
        let norm = crate::linalg::vec_norm(psi);
        if !(norm > T::zero()) {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let psi: Vec<_> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&psi, &psi))
    }

    /// Maximally mixed state on `dim` levels.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: ComplexMatrix::identity(dim).scale_real(T::one() / T::from_usize(dim).unwrap()) }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn purity(&self) -> T {
        self.matrix.matmul(&self.matrix).trace().re
    }

    /// `1/2 || rho - sigma ||_1`.
    pub fn trace_distance(&self, other: &Self) -> Result<T> {
        trace_distance(&self.matrix, &other.matrix)
    }
}

/// Half the trace norm of the (Hermitian) difference.
pub fn trace_distance<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> Result<T> {
    let diff = (a - b).hermitian_part();
    let ev = hermitian_eig(&diff)?.values;
    Ok(ev.iter().map(|x| x.abs()).sum::<T>() * T::lit(0.5))
}
