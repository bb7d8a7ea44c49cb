//! Dense row-major matrices for the matrix-function reference solver and the
//! small dense oracles in tests.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use rayon::prelude::*;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        DenseMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// self ← self + c · other.
    pub fn add_scaled(&mut self, c: T, other: &DenseMatrix<T>) {
        debug_assert_eq!(self.data.len(), other.data.len());
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
    }

    pub fn scale(&mut self, c: T) {
        self.data.iter_mut().for_each(|v| *v *= c);
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> T {
        let mut sums = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            for (s, &v) in sums.iter_mut().zip(self.row(i)) {
                *s += v.abs();
            }
        }
        sums.into_iter().fold(T::zero(), T::max)
    }

    /// Matrix product, parallelized over rows of the result.
    pub fn matmul(&self, other: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.cols, other.rows);
        let rows = self.rows;
        let cols = other.cols;
        let inner = self.cols;
        let mut out = vec![T::zero(); rows * cols];
        out.par_chunks_mut(cols)
            .enumerate()
            .for_each(|(i, out_row)| {
                let a_row = self.row(i);
                for (k, &aik) in a_row.iter().enumerate().take(inner) {
                    if aik != T::zero() {
                        let b_row = other.row(k);
                        for (o, &bkj) in out_row.iter_mut().zip(b_row) {
                            *o += aik * bkj;
                        }
                    }
                }
            });
        DenseMatrix {
            rows,
            cols,
            data: out,
        }
    }

    /// Matrix-vector product.
    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a * b)
                    .fold(T::zero(), |acc, v| acc + v)
            })
            .collect()
    }

    /// Solve self · X = B in place of B via LU with partial pivoting.
    pub fn lu_solve_in_place(&self, b: &mut DenseMatrix<T>) -> Result<()> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.rows, self.rows);
        let n = self.rows;
        let mut lu = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (pivot_row, pivot_abs) = (k..n)
                .map(|i| (i, lu[(i, k)].abs()))
                .fold((k, T::zero()), |acc, v| if v.1 > acc.1 { v } else { acc });
            if pivot_abs == T::zero() {
                return Err(Error::SingularMatrix {
                    context: "dense LU",
                    row: k,
                });
            }
            if pivot_row != k {
                perm.swap(pivot_row, k);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let l = lu[(i, k)] / pivot;
                lu[(i, k)] = l;
                if l != T::zero() {
                    for j in k + 1..n {
                        let v = lu[(k, j)];
                        lu[(i, j)] -= l * v;
                    }
                }
            }
        }
        // apply row permutation to B
        let mut pb = DenseMatrix::zeros(b.rows, b.cols);
        for (i, &pi) in perm.iter().enumerate() {
            pb.row_mut(i).copy_from_slice(b.row(pi));
        }
        // forward/back substitution, column blocks handled row-wise
        for i in 1..n {
            for k in 0..i {
                let l = lu[(i, k)];
                if l != T::zero() {
                    let (head, tail) = pb.data.split_at_mut(i * pb.cols);
                    let src = &head[k * pb.cols..(k + 1) * pb.cols];
                    let dst = &mut tail[..pb.cols];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d -= l * s;
                    }
                }
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = lu[(i, k)];
                if u != T::zero() {
                    let (head, tail) = pb.data.split_at_mut(k * pb.cols);
                    let dst = &mut head[i * pb.cols..(i + 1) * pb.cols];
                    let src = &tail[..pb.cols];
                    for (d, &s) in dst.iter_mut().zip(src) {
                        *d -= u * s;
                    }
                }
            }
            let piv = lu[(i, i)];
            for v in pb.row_mut(i) {
                *v /= piv;
            }
        }
        *b = pb;
        Ok(())
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}
