//! Dense row-major matrices over any [`Scalar`] field, with the
//! elimination-based routines both backends share.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type CMatrix = Mat<Complex64>;

impl<T> Mat<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Self { rows, cols, data }
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

    /// Row-major backing slice.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Self { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(n_rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[T]) {
        for (i, x) in v.iter().enumerate() {
            self[(i, j)] = x.clone();
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other.data[k * other.cols + j].clone();
                    let slot = &mut out.data[i * other.cols + j];
                    *slot = slot.clone() + prod;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(self.cols, x.len(), "matvec dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    acc = acc + a.clone() * b.clone();
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.clone() * s.clone())
    }

    /// `self - s·I`.
    pub fn shifted(&self, s: &T) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = m[(i, i)].clone() - s.clone();
        }
        m
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self);
        }
        acc
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    pub fn to_complex(&self) -> CMatrix {
        self.map(|x| x.to_complex())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.magnitude()).fold(0.0, f64::max)
    }

    /// Reduced row echelon form in place. Entries with `negligible(tol)` are
    /// treated as zero. Returns the pivot columns.
    pub fn rref_in_place(&mut self, tol: f64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // partial pivoting by magnitude
            let mut best = r;
            let mut best_mag = self[(r, c)].magnitude();
            for i in r + 1..self.rows {
                let m = self[(i, c)].magnitude();
                if m > best_mag {
                    best = i;
                    best_mag = m;
                }
            }
            if self[(best, c)].negligible(tol) {
                for i in r..self.rows {
                    self[(i, c)] = T::zero();
                }
                continue;
            }
            self.swap_rows(r, best);
            let p = self[(r, c)].clone();
            for j in c..self.cols {
                self[(r, j)] = self[(r, j)].clone() / p.clone();
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    let v = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.clone().rref_in_place(tol).len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn nullspace(&self, tol: f64) -> Vec<Vec<T>> {
        let mut r = self.clone();
        let pivots = r.rref_in_place(tol);
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![T::zero(); self.cols];
            v[free] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `self · X = rhs` for square `self` by Gaussian elimination with
    /// partial pivoting.
    pub fn solve(&self, rhs: &Self, tol: f64) -> Result<Self> {
        if !self.is_square() || rhs.rows != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: rhs.rows });
        }
        let n = self.rows;
        let m = rhs.cols;
        let mut aug =
            Self::from_fn(n, n + m, |i, j| if j < n { self[(i, j)].clone() } else { rhs[(i, j - n)].clone() });
        // forward elimination only, then back substitution
        for c in 0..n {
            let mut best = c;
            let mut best_mag = aug[(c, c)].magnitude();
            for i in c + 1..n {
                let mag = aug[(i, c)].magnitude();
                if mag > best_mag {
                    best = i;
                    best_mag = mag;
                }
            }
            if aug[(best, c)].negligible(tol) {
                return Err(Error::Singular);
            }
            aug.swap_rows(c, best);
            let p = aug[(c, c)].clone();
            for i in c + 1..n {
                if aug[(i, c)].is_zero() {
                    continue;
                }
                let f = aug[(i, c)].clone() / p.clone();
                for j in c..n + m {
                    let v = aug[(i, j)].clone() - f.clone() * aug[(c, j)].clone();
                    aug[(i, j)] = v;
                }
            }
        }
        let mut x = Self::zeros(n, m);
        for col in 0..m {
            for i in (0..n).rev() {
                let mut acc = aug[(i, n + col)].clone();
                for k in i + 1..n {
                    acc = acc - aug[(i, k)].clone() * x[(k, col)].clone();
                }
                x[(i, col)] = acc / aug[(i, i)].clone();
            }
        }
        Ok(x)
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        self.solve(&Self::identity(self.rows), tol)
    }

    /// Block-diagonal assembly.
    pub fn block_diag(blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::GaussRat;

    fn q(a: i64) -> GaussRat {
        GaussRat::from_i64(a)
    }

    #[test]
    fn exact_inverse_and_nullspace() {
        let a = Mat::from_rows(&[vec![q(2), q(1)], vec![q(1), q(1)]]);
        let inv = a.inverse(0.0).unwrap();
        assert_eq!(a.matmul(&inv), Mat::identity(2));
        let s = Mat::from_rows(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        let ns = s.nullspace(0.0);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(s.matvec(&v).iter().all(|x| x.is_zero()));
        }
        assert_eq!(s.rank(0.0), 1);
    }

    #[test]
    fn singular_solve_fails() {
        let a = Mat::from_rows(&[vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert!(matches!(a.inverse(0.0), Err(Error::Singular)));
    }
}
