//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Columns are orthogonalized pairwise by unitary plane rotations applied
//! from the right. Pairs that are already orthogonal are never touched, so
//! block structure in the input survives exactly and tiny singular values
//! of a badly scaled block are resolved relative to that block.

use num_traits::Zero;

use super::matrix::{inner, vec_norm, ComplexMatrix};
use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

const MAX_SWEEPS: usize = 80;

/// Singular values in ascending order with matching right singular vectors
/// (columns of `v`).
#[derive(Clone, Debug)]
pub struct Svd<T: Real> {
    pub values: Vec<T>,
    pub v: ComplexMatrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn right_vector(&self, k: usize) -> Vec<Cx<T>> {
        self.v.column(k)
    }
}

pub fn svd<T: Real>(a: &ComplexMatrix<T>) -> Result<Svd<T>> {
    let (m, n) = (a.rows(), a.cols());
    if m < n {
        return Err(Error::Dimension(format!("one-sided Jacobi SVD needs rows >= cols, got {m}x{n}")));
    }
    // Column-major working copy.
    let mut cols: Vec<Vec<Cx<T>>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Cx<T>>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { Cx::new(T::one(), T::zero()) } else { Cx::zero() }).collect())
        .collect();
    // Orthogonality threshold sqrt(m) * eps, as in LAPACK's one-sided Jacobi.
    let tol = T::epsilon() * T::from_usize(m).unwrap().sqrt();
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha: T = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: T = cols[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g.is_zero() || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let u = gamma / g;
                let zeta = (beta - alpha) / (g + g);
                let t = if zeta >= T::zero() {
                    T::one() / (zeta + (T::one() + zeta * zeta).sqrt())
                } else {
                    -T::one() / (-zeta + (T::one() + zeta * zeta).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;
                let jpq = u * s;
                let jqp = -(u.conj() * s);
                apply(&mut cols, p, q, c, jpq, jqp);
                apply(&mut v, p, q, c, jpq, jqp);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided Jacobi SVD"));
    }
    let sigma: Vec<T> = cols.iter().map(|c| vec_norm(c)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[i].partial_cmp(&sigma[j]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| sigma[i]).collect();
    let vm = ComplexMatrix::from_fn(n, n, |i, k| v[order[k]][i]);
    Ok(Svd { values, v: vm })
}

fn apply<T: Real>(cols: &mut [Vec<Cx<T>>], p: usize, q: usize, c: T, jpq: Cx<T>, jqp: Cx<T>) {
    let (left, right) = cols.split_at_mut(q);
    let cp = &mut left[p];
    let cq = &mut right[0];
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = a * c + b * jqp;
        *y = a * jpq + b * c;
    }
}
