//! Dense complex matrices stored row-major.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{re, Cx, Real};

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Cx<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![Cx::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = re(T::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cx<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<Cx<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = rows[0].len();
        Self::from_fn(n, m, |i, j| re(T::lit(rows[i][j])))
    }

    pub fn diag(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = re(v);
        }
        m
    }

    pub fn diag_complex(values: &[Cx<T>]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Outer product `|a><b|`.
    pub fn outer(a: &[Cx<T>], b: &[Cx<T>]) -> Self {
        Self::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Cx<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Cx<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Cx<T>> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Cx<T>) -> Cx<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn trace(&self) -> Cx<T> {
        self.diagonal().into_iter().fold(Cx::zero(), |a, b| a + b)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Induced 1-norm (largest absolute column sum); bounds the spectral radius.
    pub fn one_norm(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].norm()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Cx<T>]) -> Vec<Cx<T>> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        self.data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(v).fold(Cx::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &self.matmul(other) + &other.matmul(self)
    }

    /// Largest modulus of `A - A^H`.
    pub fn hermitian_deviation(&self) -> T {
        if !self.is_square() {
            return T::infinity();
        }
        let mut dev = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Hermiticity within `1e-12 * max|A|` (rescaled to the working precision).
    pub fn is_hermitian(&self) -> bool {
        self.is_square() && self.hermitian_deviation() <= T::tol(1e-12) * self.max_abs()
    }

    /// `(A + A^H) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// Column-stacking vectorization.
    pub fn vectorize(&self) -> Vec<Cx<T>> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self[(i, j)]);
            }
        }
        v
    }

    /// Inverse of [`vectorize`](Self::vectorize) for an `n x n` matrix.
    pub fn unvectorize(v: &[Cx<T>], n: usize) -> Result<Self> {
        if v.len() != n * n {
            return Err(Error::Dimension(format!("vector of length {} is not {n}x{n}", v.len())));
        }
        Ok(Self::from_fn(n, n, |i, j| v[j * n + i]))
    }

    /// Maximum entrywise distance to another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| (*a - *b).norm()).fold(T::zero(), T::max)
    }

    /// Converts to another precision.
    pub fn cast<U: Real>(&self) -> ComplexMatrix<U> {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|z| Cx::new(U::lit(z.re.to_f64_lossy()), U::lit(z.im.to_f64_lossy())))
                .collect(),
        }
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Cx<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Cx<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cx<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add dimension mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub dimension mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Real> AddAssign<&ComplexMatrix<T>> for ComplexMatrix<T> {
    fn add_assign(&mut self, rhs: &ComplexMatrix<T>) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add dimension mismatch");
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}

impl<T: Real> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a (x) b`.
pub fn kron<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let (rb, cb) = (b.rows, b.cols);
    let mut out = ComplexMatrix::zeros(a.rows * rb, a.cols * cb);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let aij = a[(i, j)];
            if aij.is_zero() {
                continue;
            }
            for k in 0..rb {
                for l in 0..cb {
                    out[(i * rb + k, j * cb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Hermitian inner product `<a|b>`.
pub fn inner<T: Real>(a: &[Cx<T>], b: &[Cx<T>]) -> Cx<T> {
    a.iter().zip(b).fold(Cx::zero(), |acc, (x, y)| acc + x.conj() * y)
}

pub fn vec_norm<T: Real>(a: &[Cx<T>]) -> T {
    a.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type M = ComplexMatrix<f64>;

    fn sigma_y() -> M {
        M::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => cx(0.0, -1.0),
            (1, 0) => cx(0.0, 1.0),
            _ => Cx::zero(),
        })
    }

    #[test]
    fn kron_of_identities_is_identity() {
        assert_eq!(kron(&M::identity(2), &M::identity(2)), M::identity(4));
    }

    #[test]
    fn kron_sigma_z_identity() {
        let z = M::diag(&[1.0, -1.0]);
        assert_eq!(kron(&z, &M::identity(2)), M::diag(&[1.0, 1.0, -1.0, -1.0]));
    }

    #[test]
    fn kron_sigma_y_sigma_y() {
        let yy = kron(&sigma_y(), &sigma_y());
        for z in yy.as_slice() {
            assert_eq!(z.im, 0.0);
            assert!([0.0, 1.0, -1.0].contains(&z.re));
        }
        assert_eq!(yy[(0, 3)], cx(-1.0, 0.0));
        assert_eq!(yy[(1, 2)], cx(1.0, 0.0));
    }

    #[test]
    fn vectorize_round_trip_is_column_major() {
        let a = M::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let v = a.vectorize();
        assert_eq!(v.iter().map(|z| z.re).collect::<Vec<_>>(), vec![1.0, 3.0, 2.0, 4.0]);
        assert_eq!(M::unvectorize(&v, 2).unwrap(), a);
        assert!(M::unvectorize(&v, 3).is_err());
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(M::from_row_major(2, 2, vec![Cx::zero(); 3]).is_err());
        assert!(M::from_row_major(0, 2, vec![]).is_err());
    }
}
