//! Stationary state of the Liouvillian and an explicit time-stepping oracle.

use super::liouvillian::Liouvillian;
use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{svd, vec_norm, ComplexMatrix};
use crate::model::DIM;
use crate::scalar::{Cx, Real};

/// Required ratio between the two smallest singular values.
const UNIQUENESS_RATIO: f64 = 1e3;

#[derive(Clone, Debug)]
pub struct SteadyState<T: Real> {
    /// NESS in the computational basis.
    pub state: DensityMatrix<T>,
    /// The same state in the energy eigenbasis.
    pub energy_state: ComplexMatrix<T>,
    /// `||L rho|| / ||L||` (Frobenius) for the returned state.
    pub residual: T,
    pub smallest_singular: T,
    pub second_singular: T,
}

/// Kernel of the Liouvillian from its singular value decomposition.
///
/// The decomposition runs on the energy-basis matrix, where populations
/// and coherences decouple for a nondegenerate Bohr spectrum; the slow
/// population block is then resolved on its own scale rather than on the
/// scale of the Hamiltonian part.
pub fn solve_ness<T: Real>(l: &Liouvillian<T>) -> Result<SteadyState<T>> {
    let le = l.energy_matrix();
    let dec = svd(le)?;
    let (smallest, second) = (dec.values[0], dec.values[1]);
    if !(second > T::lit(UNIQUENESS_RATIO) * smallest) || second <= T::min_positive_value() {
        return Err(Error::DegenerateSteadyState { smallest: smallest.to_f64_lossy(), second: second.to_f64_lossy() });
    }
    let null = dec.right_vector(0);
    let rho_e = ComplexMatrix::unvectorize(&null, DIM)?;
    let rho_e = DensityMatrix::from_numerical(&rho_e)?.into_matrix();

    let residual = vec_norm(&le.matvec(&rho_e.vectorize())) / le.frobenius_norm();
    let allowed = T::tol(1e-10);
    if residual > allowed {
        return Err(Error::NotStationary { residual: residual.to_f64_lossy(), allowed: allowed.to_f64_lossy() });
    }
    let v = l.basis();
    let rho = v.matmul(&rho_e).matmul(&v.adjoint());
    let state = DensityMatrix::from_numerical(&rho)?;
    Ok(SteadyState { state, energy_state: rho_e, residual, smallest_singular: smallest, second_singular: second })
}

/// Classical fourth-order Runge-Kutta integration of `d vec(rho)/dt = L vec(rho)`.
///
/// For a constant generator one RK4 step of size `h` is multiplication by
/// `P = 1 + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24`; `N` steps are applied as
/// `P^N` by repeated squaring. The step is shrunk so that `N h = t_final`,
/// and `dt * max|eig(L)| <= 0.1` is required.
pub fn propagate<T: Real>(rho0: &DensityMatrix<T>, l: &Liouvillian<T>, t_final: T, dt: T) -> Result<DensityMatrix<T>> {
    if !(dt > T::zero()) {
        return Err(Error::param("dt", "must be positive"));
    }
    if !(t_final >= T::zero()) || !t_final.is_finite() {
        return Err(Error::param("t_final", "must be finite and >= 0"));
    }
    if rho0.dim() != DIM {
        return Err(Error::Dimension(format!("initial state is {}x{}", rho0.dim(), rho0.dim())));
    }
    let radius = l.spectrum()?.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if dt * radius > T::lit(0.1) {
        return Err(Error::StepTooLarge { dt: dt.to_f64_lossy(), product: (dt * radius).to_f64_lossy() });
    }
    if t_final == T::zero() {
        return Ok(rho0.clone());
    }
    let steps = (t_final / dt).ceil().to_u64().ok_or(Error::param("t_final", "too many steps"))?.max(1);
    let h = t_final / T::from_u64(steps).unwrap();
    let mut power = rk4_step_matrix(l.matrix(), h);
    let mut v = rho0.matrix().vectorize();
    let mut remaining = steps;
    while remaining > 0 {
        if remaining & 1 == 1 {
            v = power.matvec(&v);
        }
        remaining >>= 1;
        if remaining > 0 {
            power = power.matmul(&power);
        }
    }
    let rho = ComplexMatrix::unvectorize(&v, DIM)?;
    let drift = (rho.trace() - rho0.matrix().trace()).norm();
    if drift > T::tol(1e-8) {
        return Err(Error::InvalidState(format!("trace drift {:e} during propagation", drift.to_f64_lossy())));
    }
    DensityMatrix::from_numerical(&rho)
}

fn rk4_step_matrix<T: Real>(l: &ComplexMatrix<T>, h: T) -> ComplexMatrix<T> {
    let n = l.rows();
    let id = ComplexMatrix::identity(n);
    let hl = l.scale_real(h);
    // Horner: I + hL (I + hL/2 (I + hL/3 (I + hL/4)))
    let mut p = id.clone();
    for k in [4.0, 3.0, 2.0, 1.0] {
        p = &id + &hl.matmul(&p).scale(Cx::new(T::one() / T::lit(k), T::zero()));
    }
    p
}
