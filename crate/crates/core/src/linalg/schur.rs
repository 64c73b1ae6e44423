//! Eigenvalues of general complex matrices: Householder reduction to
//! Hessenberg form followed by single-shift QR with deflation.

use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Cx, Real};

const MAX_ITER_PER_EIGENVALUE: usize = 60;

pub fn eigenvalues<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<Cx<T>>> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("eigenvalues of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut h = a.clone();
    hessenberg(&mut h);
    let eps = T::epsilon();
    let mut out = vec![Cx::zero(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    loop {
        if hi == 0 {
            out[0] = h[(0, 0)];
            break;
        }
        // Deflate at the lowest negligible subdiagonal entry.
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s.is_zero() { a.max_abs() } else { s };
            if h[(lo, lo - 1)].norm() <= eps * s {
                h[(lo, lo - 1)] = Cx::zero();
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            out[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        if iter > MAX_ITER_PER_EIGENVALUE {
            return Err(Error::NoConvergence("Hessenberg QR"));
        }
        let mu = if iter % 11 == 0 {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Cx::new(h[(hi, hi - 1)].norm() * T::lit(0.75), T::zero())
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, lo, hi, mu);
    }
    Ok(out)
}

fn wilkinson_shift<T: Real>(h: &ComplexMatrix<T>, hi: usize) -> Cx<T> {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let half = T::lit(0.5);
    let m = (a + d) * half;
    let disc = (((a - d) * half) * ((a - d) * half) + b * c).sqrt();
    let l1 = m + disc;
    let l2 = m - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Explicit shifted QR step `H - mu = QR`, `H <- RQ + mu` on the active block.
fn qr_step<T: Real>(h: &mut ComplexMatrix<T>, lo: usize, hi: usize, mu: Cx<T>) {
    let n = h.rows();
    for k in lo..=hi {
        h[(k, k)] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let (c, s) = if r.is_zero() {
            (Cx::new(T::one(), T::zero()), Cx::zero())
        } else {
            (a / r, b / r)
        };
        // G = [[conj c, conj s], [-s, c]] applied to rows k, k+1.
        for j in k..n {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = c.conj() * x + s.conj() * y;
            h[(k + 1, j)] = -s * x + c * y;
        }
        rots.push((c, s));
    }
    for (idx, k) in (lo..hi).enumerate() {
        let (c, s) = rots[idx];
        // Right-multiply by G^H on columns k, k+1.
        for i in 0..=(k + 1).min(hi) {
            let x = h[(i, k)];
            let y = h[(i, k + 1)];
            h[(i, k)] = x * c + y * s;
            h[(i, k + 1)] = -(x * s.conj()) + y * c.conj();
        }
    }
    for k in lo..=hi {
        h[(k, k)] += mu;
    }
}

fn hessenberg<T: Real>(h: &mut ComplexMatrix<T>) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let x: Vec<Cx<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm.is_zero() {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm().is_zero() { Cx::new(T::one(), T::zero()) } else { x0 / x0.norm() };
        let mut v = x;
        v[0] = x0 + phase * norm;
        let vnorm2 = v.iter().map(|z| z.norm_sqr()).sum::<T>();
        if vnorm2.is_zero() {
            continue;
        }
        let two = T::lit(2.0);
        // H <- P H with P = I - 2 v v^H / |v|^2 acting on rows k+1..n
        for j in 0..n {
            let mut dot = Cx::zero();
            for (idx, i) in (k + 1..n).enumerate() {
                dot += v[idx].conj() * h[(i, j)];
            }
            let f = dot * (two / vnorm2);
            for (idx, i) in (k + 1..n).enumerate() {
                h[(i, j)] -= v[idx] * f;
            }
        }
        // H <- H P on columns k+1..n
        for i in 0..n {
            let mut dot = Cx::zero();
            for (idx, j) in (k + 1..n).enumerate() {
                dot += h[(i, j)] * v[idx];
            }
            let f = dot * (two / vnorm2);
            for (idx, j) in (k + 1..n).enumerate() {
                h[(i, j)] -= f * v[idx].conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Cx::zero();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig::hermitian_eigenvalues;
    use crate::scalar::cx;

    type M = ComplexMatrix<f64>;

    fn sorted(mut v: Vec<Cx<f64>>) -> Vec<Cx<f64>> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        v
    }

    #[test]
    fn triangular_matrix_eigenvalues_are_diagonal() {
        let a = M::from_fn(4, 4, |i, j| if j >= i { cx((i + 1) as f64, (j as f64) * 0.3) } else { Cx::zero() });
        let ev = sorted(eigenvalues(&a).unwrap());
        let want = sorted(a.diagonal());
        for (g, w) in ev.iter().zip(&want) {
            assert!((g - w).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_generator_is_imaginary() {
        let a = M::from_real_rows(&[&[0.0, -2.0], &[2.0, 0.0]]);
        let ev = sorted(eigenvalues(&a).unwrap());
        assert!((ev[0] - cx(0.0, -2.0)).norm() < 1e-14);
        assert!((ev[1] - cx(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn agrees_with_hermitian_solver() {
        let a = M::from_fn(6, 6, |i, j| {
            let x = ((i * 7 + j * 3) % 5) as f64 - 2.0;
            let y = ((i * 2 + j * 5) % 3) as f64 - 1.0;
            if i == j {
                cx(x, 0.0)
            } else if i < j {
                cx(x, y)
            } else {
                let x = ((j * 7 + i * 3) % 5) as f64 - 2.0;
                let y = ((j * 2 + i * 5) % 3) as f64 - 1.0;
                cx(x, -y)
            }
        });
        let mut herm = hermitian_eigenvalues(&a).unwrap();
        herm.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let general = sorted(eigenvalues(&a).unwrap());
        for (g, h) in general.iter().zip(&herm) {
            assert!((g.re - h).abs() < 1e-11 && g.im.abs() < 1e-11);
        }
    }

    #[test]
    fn trace_and_determinant_preserved() {
        let a = M::from_fn(5, 5, |i, j| cx(((i + 1) * (j + 2) % 7) as f64, ((i + j) % 3) as f64 - 1.0));
        let ev = eigenvalues(&a).unwrap();
        let sum = ev.iter().fold(Cx::<f64>::zero(), |s, z| s + z);
        assert!((sum - a.trace()).norm() < 1e-10);
    }
}
