//! Dense row-major matrices generic over a scalar field.

use super::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense matrix with row-major storage.
#[derive(Clone, PartialEq)]
pub struct Mat<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    /// `s · I`.
    pub fn scalar(n: usize, s: S) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged row lengths"
        );
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_diag(diag: &[S]) -> Self {
        let n = diag.len();
        let mut m = Mat::zeros(n, n);
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.clone();
        }
        m
    }

    /// Permutation matrix `P` with `(P v)_i = v_{perm[i]}`, i.e. row `i`
    /// carries a one in column `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Mat::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            assert!(p < n, "permutation image out of range");
            m.data[i * n + p] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [S] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn matmul(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k].clone();
                if a.is_zero() {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let orow: &mut [S] = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, r) in orow.iter_mut().zip(rrow) {
                    *o = o.clone() + a.clone() * r.clone();
                }
            }
        }
        out
    }

    pub fn add_mat(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub_mat(&self, rhs: &Mat<S>) -> Mat<S> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &S) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| s.clone() * a.clone()).collect(),
        }
    }

    pub fn neg_mat(&self) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// `[A, B] = AB − BA`.
    pub fn commutator(&self, rhs: &Mat<S>) -> Mat<S> {
        self.matmul(rhs).sub_mat(&rhs.matmul(self))
    }

    pub fn transpose(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn conj_t(&self) -> Mat<S> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).conj())
    }

    /// Entry-wise conjugate.
    pub fn conj(&self) -> Mat<S> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::conj).collect(),
        }
    }

    pub fn trace(&self) -> S {
        assert!(self.is_square());
        let mut t = S::zero();
        for i in 0..self.rows {
            t = t + self.data[i * self.cols + i].clone();
        }
        t
    }

    /// Kronecker product: `(A ⊗ B)[i·rB + k, j·cB + l] = A[i,j]·B[k,l]`.
    pub fn kron(&self, rhs: &Mat<S>) -> Mat<S> {
        let (ra, ca) = (self.rows, self.cols);
        let (rb, cb) = (rhs.rows, rhs.cols);
        let mut out = Mat::zeros(ra * rb, ca * cb);
        for i in 0..ra {
            for j in 0..ca {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rb {
                    for l in 0..cb {
                        out.set(i * rb + k, j * cb + l, a.clone() * rhs.at(k, l).clone());
                    }
                }
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`; row/column counts must be
    /// consistent across each band.
    pub fn block4(a: &Mat<S>, b: &Mat<S>, c: &Mat<S>, d: &Mat<S>) -> Mat<S> {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = Mat::zeros(a.rows + c.rows, a.cols + b.cols);
        out.set_block(0, 0, a);
        out.set_block(0, a.cols, b);
        out.set_block(a.rows, 0, c);
        out.set_block(a.rows, a.cols, d);
        out
    }

    pub fn set_block(&mut self, i0: usize, j0: usize, block: &Mat<S>) {
        assert!(i0 + block.rows <= self.rows && j0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(i0 + i) * self.cols + (j0 + j)] = block.at(i, j).clone();
            }
        }
    }

    pub fn block(&self, i0: usize, j0: usize, rows: usize, cols: usize) -> Mat<S> {
        assert!(i0 + rows <= self.rows && j0 + cols <= self.cols);
        Mat::from_fn(rows, cols, |i, j| self.at(i0 + i, j0 + j).clone())
    }

    /// `A ⊕ B` on the diagonal.
    pub fn direct_sum(&self, rhs: &Mat<S>) -> Mat<S> {
        let mut out = Mat::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Mat<T> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_c64(&self) -> Mat<super::scalar::C64> {
        self.map(Scalar::to_c64)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::abs_f64).fold(0.0, f64::max)
    }

    /// Frobenius norm (entry moduli are taken as `f64`).
    pub fn fro_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|a| {
                let v = a.abs_f64();
                v * v
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.data.iter().all(|a| a.is_negligible(tol))
    }

    pub fn approx_eq(&self, rhs: &Mat<S>, tol: f64) -> bool {
        (self.rows, self.cols) == (rhs.rows, rhs.cols) && self.sub_mat(rhs).is_zero_within(tol)
    }

    /// Exact entry-wise equality (meaningful for exact scalars).
    pub fn eq_exact(&self, rhs: &Mat<S>) -> bool {
        self == rhs
    }
}

impl<S: Scalar> Add for &Mat<S> {
    type Output = Mat<S>;
    fn add(self, rhs: &Mat<S>) -> Mat<S> {
        self.add_mat(rhs)
    }
}

impl<S: Scalar> Sub for &Mat<S> {
    type Output = Mat<S>;
    fn sub(self, rhs: &Mat<S>) -> Mat<S> {
        self.sub_mat(rhs)
    }
}

impl<S: Scalar> Mul for &Mat<S> {
    type Output = Mat<S>;
    fn mul(self, rhs: &Mat<S>) -> Mat<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> Neg for &Mat<S> {
    type Output = Mat<S>;
    fn neg(self) -> Mat<S> {
        self.neg_mat()
    }
}

impl<S: Scalar> fmt::Debug for Mat<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self.at(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
