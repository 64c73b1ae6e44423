//! GKSL dissipators and the Liouvillian superoperator.
//!
//! Superoperators act on column-stacked density matrices:
//! `vec(A rho B) = (B^T (x) A) vec(rho)`.

use num_traits::Zero;

use super::state::DensityMatrix;
use crate::baths::{rates, BathSpec, Rates};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, kron, ComplexMatrix};
use crate::model::{decompose, JumpOperator, SpectralDecomposition, SystemSpec, Terminal, DEFAULT_BINNING_TOL, DIM};
use crate::scalar::{cx, Cx, Real};

/// Which matrix representation of the jump operators to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Basis {
    Computational,
    Energy,
}

fn operator<T: Real>(j: &JumpOperator<T>, basis: Basis) -> &ComplexMatrix<T> {
    match basis {
        Basis::Computational => &j.computational,
        Basis::Energy => &j.energy,
    }
}

pub(crate) fn jump_rates<T: Real>(jumps: &[JumpOperator<T>], bath: &BathSpec<T>) -> Result<Vec<Rates<T>>> {
    jumps.iter().map(|j| rates(j.omega, bath)).collect()
}

/// `D[rho] = sum_w G(w) (S rho S^H - {S^H S, rho}/2) + G(-w) (S^H rho S - {S S^H, rho}/2)`.
pub(crate) fn apply_dissipator<T: Real>(
    rho: &ComplexMatrix<T>,
    jumps: &[JumpOperator<T>],
    bath: &BathSpec<T>,
    basis: Basis,
) -> Result<ComplexMatrix<T>> {
    if rho.rows() != DIM || rho.cols() != DIM {
        return Err(Error::Dimension(format!("dissipator expects {DIM}x{DIM}, got {}x{}", rho.rows(), rho.cols())));
    }
    let half = T::lit(0.5);
    let mut out = ComplexMatrix::zeros(DIM, DIM);
    for (j, r) in jumps.iter().zip(jump_rates(jumps, bath)?) {
        let s = operator(j, basis);
        let sh = s.adjoint();
        if !r.emission.is_zero() {
            let term = &s.matmul(rho).matmul(&sh) - &sh.matmul(s).anticommutator(rho).scale_real(half);
            out += &term.scale_real(r.emission);
        }
        if !r.absorption.is_zero() {
            let term = &sh.matmul(rho).matmul(s) - &s.matmul(&sh).anticommutator(rho).scale_real(half);
            out += &term.scale_real(r.absorption);
        }
    }
    Ok(out)
}

/// Dissipator of reservoir `site` applied to `rho`, in the computational basis.
pub fn dissipator<T: Real>(
    rho: &DensityMatrix<T>,
    site: Terminal,
    decomp: &SpectralDecomposition<T>,
    bath: &BathSpec<T>,
) -> Result<ComplexMatrix<T>> {
    apply_dissipator(rho.matrix(), decomp.jumps(site), bath, Basis::Computational)
}

/// Generator of the reduced dynamics, kept in the computational basis and
/// in the energy eigenbasis of `H_S`.
#[derive(Clone, Debug)]
pub struct Liouvillian<T: Real> {
    computational: ComplexMatrix<T>,
    energy: ComplexMatrix<T>,
    basis: ComplexMatrix<T>,
}

impl<T: Real> Liouvillian<T> {
    pub fn from_decomposition(decomp: &SpectralDecomposition<T>, baths: &[BathSpec<T>; 3]) -> Result<Self> {
        for b in baths {
            b.validate()?;
        }
        let h_energy = ComplexMatrix::diag(decomp.energies());
        let mut computational = hamiltonian_part(&decomp.hamiltonian);
        let mut energy = hamiltonian_part(&h_energy);
        for site in Terminal::ALL {
            let jumps = decomp.jumps(site);
            let r = jump_rates(jumps, &baths[site.index()])?;
            for (j, r) in jumps.iter().zip(&r) {
                add_jump(&mut computational, &j.computational, r);
                add_jump(&mut energy, &j.energy, r);
            }
        }
        Ok(Self { computational, energy, basis: decomp.basis().clone() })
    }

    /// Matrix in the computational basis.
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.computational
    }

    /// Matrix in the energy eigenbasis of `H_S`.
    pub fn energy_matrix(&self) -> &ComplexMatrix<T> {
        &self.energy
    }

    /// Energy eigenvectors as columns.
    pub fn basis(&self) -> &ComplexMatrix<T> {
        &self.basis
    }

    pub fn apply(&self, rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        ComplexMatrix::unvectorize(&self.computational.matvec(&rho.vectorize()), DIM)
    }

    /// Largest modulus of `vec(I)^H L`, zero for a trace-preserving generator.
    pub fn trace_preservation_defect(&self) -> T {
        let n = DIM * DIM;
        (0..n)
            .map(|col| (0..DIM).fold(Cx::zero(), |acc, i| acc + self.computational[(i * DIM + i, col)]).norm())
            .fold(T::zero(), T::max)
    }

    pub fn spectrum(&self) -> Result<Vec<Cx<T>>> {
        eigenvalues(&self.computational)
    }

    /// Upper bound on the spectral radius.
    pub fn norm_bound(&self) -> T {
        self.computational.one_norm()
    }
}

/// `L = -i[H, .] + sum_k D_k` with the default Bohr binning.
pub fn build_liouvillian<T: Real>(spec: &SystemSpec<T>, baths: &[BathSpec<T>; 3]) -> Result<Liouvillian<T>> {
    let decomp = decompose(spec, T::lit(DEFAULT_BINNING_TOL))?;
    Liouvillian::from_decomposition(&decomp, baths)
}

/// `-i (I (x) H - H^T (x) I)`.
fn hamiltonian_part<T: Real>(h: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let id = ComplexMatrix::identity(h.rows());
    let minus_i = cx(T::zero(), -T::one());
    (&kron(&id, h) - &kron(&h.transpose(), &id)).scale(minus_i)
}

fn add_jump<T: Real>(l: &mut ComplexMatrix<T>, s: &ComplexMatrix<T>, r: &Rates<T>) {
    if !r.emission.is_zero() {
        *l += &lindblad_term(s).scale_real(r.emission);
    }
    if !r.absorption.is_zero() {
        *l += &lindblad_term(&s.adjoint()).scale_real(r.absorption);
    }
}

/// `conj(A) (x) A - (I (x) A^H A + (A^H A)^T (x) I) / 2`.
fn lindblad_term<T: Real>(a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let id = ComplexMatrix::identity(a.rows());
    let ada = a.adjoint().matmul(a);
    let half = T::lit(0.5);
    let anti = &kron(&id, &ada) + &kron(&ada.transpose(), &id);
    &kron(&a.conj(), a) - &anti.scale_real(half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{embed, gibbs_state, sigma_z};

    fn fig2_baths(t_m: f64, cutoff: f64) -> [BathSpec<f64>; 3] {
        [
            BathSpec::new(10.0, 1e-6, 1.0, cutoff).unwrap(),
            BathSpec::new(t_m, 1e-6, 1.0, cutoff).unwrap(),
            BathSpec::new(0.01, 1e-4, 1.0, cutoff).unwrap(),
        ]
    }

    #[test]
    fn vectorization_convention() {
        let a = ComplexMatrix::<f64>::from_fn(3, 3, |i, j| cx((i * 3 + j) as f64, (i as f64) - (j as f64)));
        let b = ComplexMatrix::<f64>::from_fn(3, 3, |i, j| cx((i + 2 * j) as f64 * 0.5, 1.0));
        let rho = ComplexMatrix::<f64>::from_fn(3, 3, |i, j| cx((i + j) as f64, (i * j) as f64));
        let lhs = a.matmul(&rho).matmul(&b).vectorize();
        let rhs = kron(&b.transpose(), &a).matvec(&rho.vectorize());
        for (x, y) in lhs.iter().zip(&rhs) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn superoperator_matches_direct_map() {
        let spec = SystemSpec::<f64>::reference();
        let decomp = decompose(&spec, DEFAULT_BINNING_TOL).unwrap();
        let baths = fig2_baths(2.5, decomp.default_cutoff());
        let l = Liouvillian::from_decomposition(&decomp, &baths).unwrap();
        let rho = gibbs_state(&decomp.hamiltonian, 0.7).unwrap();
        let rho = &rho + &embed(&sigma_z(), Terminal::Modulator).scale(cx(0.0, 0.01));
        let mut direct = decomp.hamiltonian.commutator(&rho).scale(cx(0.0, -1.0));
        for site in Terminal::ALL {
            direct += &apply_dissipator(&rho, decomp.jumps(site), &baths[site.index()], Basis::Computational).unwrap();
        }
        assert!(l.apply(&rho).unwrap().max_abs_diff(&direct) < 1e-12);
    }

    #[test]
    fn energy_and_computational_matrices_are_similar() {
        let spec = SystemSpec::<f64>::reference();
        let decomp = decompose(&spec, DEFAULT_BINNING_TOL).unwrap();
        let l = Liouvillian::from_decomposition(&decomp, &fig2_baths(1.0, decomp.default_cutoff())).unwrap();
        // vec(V X V^H) = (conj(V) (x) V) vec(X)
        let v = decomp.basis();
        let u = kron(&v.conj(), v);
        let back = u.matmul(l.energy_matrix()).matmul(&u.adjoint());
        assert!(back.max_abs_diff(l.matrix()) < 1e-12);
    }

    #[test]
    fn trace_preserving() {
        let l = build_liouvillian(&SystemSpec::<f64>::reference(), &fig2_baths(0.0, 30.0)).unwrap();
        assert!(l.trace_preservation_defect() < 1e-12);
    }

    #[test]
    fn rejects_wrong_dimension() {
        let spec = SystemSpec::<f64>::reference();
        let decomp = decompose(&spec, DEFAULT_BINNING_TOL).unwrap();
        let rho = ComplexMatrix::<f64>::identity(4);
        let b = fig2_baths(1.0, 30.0);
        assert!(apply_dissipator(&rho, decomp.jumps(Terminal::Source), &b[0], Basis::Computational).is_err());
    }
}
