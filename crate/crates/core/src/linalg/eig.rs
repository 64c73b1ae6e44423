//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Jacobi is slower than tridiagonal QR but the matrices here are at most
//! 64x64, and it gives eigenvectors orthonormal to working precision with
//! small eigenvalues resolved to high relative accuracy.

use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

const MAX_SWEEPS: usize = 100;

/// Eigenvalues (ascending) and orthonormal eigenvectors stored as columns.
#[derive(Clone, Debug)]
pub struct EigenSystem<T: Real> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> EigenSystem<T> {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> Vec<Cx<T>> {
        self.vectors.column(k)
    }

    /// `V f(diag(values)) V^H`.
    pub fn reconstruct_with(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let w = f(self.values[k]);
            if w.is_zero() {
                continue;
            }
            for i in 0..n {
                let vik = self.vectors[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)].conj();
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.reconstruct_with(|x| x)
    }

    /// Largest modulus of `V^H V - I`.
    pub fn unitarity_defect(&self) -> T {
        let n = self.dim();
        let g = self.vectors.adjoint().matmul(&self.vectors);
        g.max_abs_diff(&ComplexMatrix::identity(n))
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// Rejects input whose anti-Hermitian part exceeds `1e-12 * max|A|`.
pub fn hermitian_eig<T: Real>(a: &ComplexMatrix<T>) -> Result<EigenSystem<T>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("eigendecomposition of a {}x{} matrix", a.rows(), a.cols())));
    }
    let scale = a.max_abs();
    let deviation = a.hermitian_deviation();
    let allowed = T::tol(1e-12) * scale;
    if deviation > allowed {
        return Err(Error::NotHermitian { deviation: deviation.to_f64_lossy(), allowed: allowed.to_f64_lossy() });
    }
    let n = a.rows();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let eps = T::epsilon();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off: T = off_diagonal_norm(&m);
        let diag: T = (0..n).map(|i| m[(i, i)].re * m[(i, i)].re).sum::<T>().sqrt();
        if off <= eps * T::lit(0.5) * diag || off.is_zero() || off < T::min_positive_value() {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > T::tol(1e-12) * scale.max(T::min_positive_value()) {
        return Err(Error::NoConvergence("Hermitian Jacobi eigensolver"));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        let mut col = v.column(old);
        fix_phase(&mut col);
        for (i, z) in col.into_iter().enumerate() {
            vectors[(i, new)] = z;
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// Eigenvalues only.
pub fn hermitian_eigenvalues<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    hermitian_eig(a).map(|e| e.values)
}

fn off_diagonal_norm<T: Real>(m: &ComplexMatrix<T>) -> T {
    let n = m.rows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + m[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Makes the largest-magnitude component real and positive (first one on ties).
fn fix_phase<T: Real>(col: &mut [Cx<T>]) {
    let mut best = 0;
    let mut best_abs = T::zero();
    let slack = T::one() + T::tol(1e-10);
    for (i, z) in col.iter().enumerate() {
        let a = z.norm();
        if a > best_abs * slack {
            best = i;
            best_abs = a;
        }
    }
    if best_abs.is_zero() {
        return;
    }
    let phase = col[best].conj() / best_abs;
    for z in col.iter_mut() {
        *z = *z * phase;
    }
    col[best] = Cx::new(col[best].re, T::zero());
}

/// Zeroes `m[p][q]` with a unitary rotation acting on rows/columns `p` and `q`.
fn rotate<T: Real>(m: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = m[(p, q)];
    let r = apq.norm();
    if r.is_zero() {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // Skip rotations that cannot change the diagonal at working precision.
    let tiny = T::epsilon() * T::lit(1e-3);
    if r < tiny * (app.abs() + aqq.abs()) {
        m[(p, q)] = Cx::zero();
        m[(q, p)] = Cx::zero();
        return;
    }
    let u = apq / r;
    let tau = (aqq - app) / (r + r);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    // J = [[c, s u], [-s conj(u), c]] on the (p, q) plane.
    let jpq = u * s;
    let jqp = -(u.conj() * s);
    let n = m.rows();
    // M <- M J
    for i in 0..n {
        let mip = m[(i, p)];
        let miq = m[(i, q)];
        m[(i, p)] = mip * c + miq * jqp;
        m[(i, q)] = mip * jpq + miq * c;
    }
    // M <- J^H M
    for j in 0..n {
        let mpj = m[(p, j)];
        let mqj = m[(q, j)];
        m[(p, j)] = mpj * c + mqj * jqp.conj();
        m[(q, j)] = mpj * jpq.conj() + mqj * c;
    }
    m[(p, q)] = Cx::zero();
    m[(q, p)] = Cx::zero();
    m[(p, p)] = Cx::new(m[(p, p)].re, T::zero());
    m[(q, q)] = Cx::new(m[(q, q)].re, T::zero());
    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c + viq * jqp;
        v[(i, q)] = vip * jpq + viq * c;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type M = ComplexMatrix<f64>;

    #[test]
    fn pauli_spectra() {
        let z = M::diag(&[1.0, -1.0]);
        assert_eq!(hermitian_eigenvalues(&z).unwrap(), vec![-1.0, 1.0]);
        let y = M::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => cx(0.0, -1.0),
            (1, 0) => cx(0.0, 1.0),
            _ => Cx::zero(),
        });
        let e = hermitian_eig(&y).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-14 && (e.values[1] - 1.0).abs() < 1e-14);
        assert!(e.reconstruct().max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn diagonal_gives_permutation_vectors() {
        let e = hermitian_eig(&M::diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        let expected_rows = [1usize, 2, 0];
        for (k, &row) in expected_rows.iter().enumerate() {
            assert_eq!(e.vectors[(row, k)], cx(1.0, 0.0));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = M::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(hermitian_eig(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn phase_convention_largest_component_real_positive() {
        let a = M::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => cx(1.0, 0.0),
            (0, 1) => cx(0.3, 0.4),
            (1, 0) => cx(0.3, -0.4),
            _ => cx(2.0, 0.0),
        });
        let e = hermitian_eig(&a).unwrap();
        for k in 0..2 {
            let col = e.vector(k);
            let big = col.iter().max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap()).unwrap();
            assert!(big.im == 0.0 && big.re > 0.0);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let a = ComplexMatrix::<f32>::from_fn(3, 3, |i, j| {
            let x = (i + 2 * j) as f32 * 0.1;
            if i == j {
                cx(x, 0.0)
            } else if i < j {
                cx(x, 0.5)
            } else {
                cx((j + 2 * i) as f32 * 0.1, -0.5)
            }
        });
        let e = hermitian_eig(&a).unwrap();
        assert!(e.reconstruct().max_abs_diff(&a) < 1e-5);
    }
}
