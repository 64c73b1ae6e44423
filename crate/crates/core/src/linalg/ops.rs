//! Subsystem operations on operators over tensor-product spaces.
//!
//! A composite index is laid out with the first subsystem most significant,
//! matching [`kron`](super::kron) ordering.

use num_traits::Zero;

use super::eig::hermitian_eig;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

fn check_dims<T: Real>(rho: &ComplexMatrix<T>, dims: &[usize]) -> Result<()> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Subsystem(format!("invalid subsystem dimensions {dims:?}")));
    }
    if !rho.is_square() || rho.rows() != total {
        return Err(Error::Subsystem(format!(
            "factorization {dims:?} does not match a {}x{} operator",
            rho.rows(),
            rho.cols()
        )));
    }
    Ok(())
}

fn digits(mut index: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = index % dims[k];
        index /= dims[k];
    }
}

fn compose(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
}

/// Traces out every subsystem not listed in `keep`.
///
/// `keep` must be strictly increasing and non-empty; the result is ordered
/// like the kept subsystems.
pub fn partial_trace<T: Real>(rho: &ComplexMatrix<T>, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix<T>> {
    check_dims(rho, dims)?;
    if keep.is_empty() || keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::Subsystem(format!("invalid kept subsystems {keep:?} for {} parties", dims.len())));
    }
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let out_dim: usize = kept_dims.iter().product();
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    let n = rho.rows();
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    let mut ki = vec![0; keep.len()];
    let mut kj = vec![0; keep.len()];
    for i in 0..n {
        digits(i, dims, &mut di);
        for j in 0..n {
            digits(j, dims, &mut dj);
            // Traced subsystems must agree.
            let traced_match = (0..dims.len()).all(|k| keep.contains(&k) || di[k] == dj[k]);
            if !traced_match {
                continue;
            }
            for (slot, &k) in keep.iter().enumerate() {
                ki[slot] = di[k];
                kj[slot] = dj[k];
            }
            let a = compose(&ki, &kept_dims);
            let b = compose(&kj, &kept_dims);
            out[(a, b)] += rho[(i, j)];
        }
    }
    Ok(out)
}

/// Transposes the indices of subsystem `which` only.
pub fn partial_transpose<T: Real>(rho: &ComplexMatrix<T>, dims: &[usize], which: usize) -> Result<ComplexMatrix<T>> {
    check_dims(rho, dims)?;
    if which >= dims.len() {
        return Err(Error::Subsystem(format!("subsystem {which} out of range for {} parties", dims.len())));
    }
    let n = rho.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut di = vec![0; dims.len()];
    let mut dj = vec![0; dims.len()];
    for i in 0..n {
        digits(i, dims, &mut di);
        for j in 0..n {
            digits(j, dims, &mut dj);
            std::mem::swap(&mut di[which], &mut dj[which]);
            let a = compose(&di, dims);
            let b = compose(&dj, dims);
            std::mem::swap(&mut di[which], &mut dj[which]);
            out[(a, b)] = rho[(i, j)];
        }
    }
    Ok(out)
}

/// Principal square root of a Hermitian positive-semidefinite matrix.
///
/// Eigenvalues down to `-1e-12` are clamped to zero; anything below
/// `-1e-9` is rejected.
pub fn psd_sqrt<T: Real>(rho: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let e = hermitian_eig(rho)?;
    let scale = rho.max_abs().max(T::one());
    if let Some(&lowest) = e.values.first() {
        if lowest < -T::tol(1e-9) * scale {
            return Err(Error::NotPositive(lowest.to_f64_lossy()));
        }
    }
    Ok(e.reconstruct_with(|x| if x > T::zero() { x.sqrt() } else { T::zero() }))
}

/// State vector of a product of computational-basis kets, e.g. `[0, 1, 1]` for `|011>`.
pub fn basis_ket<T: Real>(bits: &[usize], dims: &[usize]) -> Vec<Cx<T>> {
    let total: usize = dims.iter().product();
    let mut v = vec![Cx::zero(); total];
    v[compose(bits, dims)] = Cx::new(T::one(), T::zero());
    v
}
