//! LU factorization of symmetric-pattern banded matrices without pivoting.
//!
//! Used for the five-point operator (half bandwidth N) behind the
//! Crank–Nicolson and stationary solves. The factored matrices are strictly
//! diagonally dominant, so pivoting is not required and the band structure is
//! preserved exactly.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// In-place LU factorization of an n×n matrix with half bandwidth `bw`.
///
/// Row i stores columns i−bw … i+bw contiguously: entry (i, j) lives at
/// `data[i * (2 bw + 1) + (j − i + bw)]`.
#[derive(Clone, Debug)]
pub struct BandedLu<T> {
    n: usize,
    bw: usize,
    data: Vec<T>,
}

impl<T: Scalar> BandedLu<T> {
    /// Build from a coordinate triplet list and factor immediately.
    pub fn from_triplets(
        n: usize,
        bw: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
        context: &'static str,
    ) -> Result<Self> {
        let width = 2 * bw + 1;
        let mut data = vec![T::zero(); n * width];
        for (i, j, v) in triplets {
            debug_assert!(i < n && j < n);
            debug_assert!(j + bw >= i && j <= i + bw, "entry outside band");
            data[i * width + (j + bw - i)] += v;
        }
        let mut lu = BandedLu { n, bw, data };
        lu.factor(context)?;
        Ok(lu)
    }

    fn at(&self, i: usize, j: usize) -> T {
        self.data[i * (2 * self.bw + 1) + (j + self.bw - i)]
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * (2 * self.bw + 1) + (j + self.bw - i)]
    }

    fn factor(&mut self, context: &'static str) -> Result<()> {
        let n = self.n;
        let bw = self.bw;
        let scale = (0..n)
            .map(|i| self.at(i, i).abs())
            .fold(T::zero(), T::max)
            .max(T::min_positive_value());
        let pivot_tol = scale * T::epsilon() * T::of(16.0);
        for k in 0..n {
            let pivot = self.at(k, k);
            if pivot.abs() <= pivot_tol {
                return Err(Error::SingularMatrix { context, row: k });
            }
            let i_end = (k + bw).min(n - 1);
            let j_end = (k + bw).min(n - 1);
            for i in k + 1..=i_end {
                let l = self.at(i, k) / pivot;
                *self.at_mut(i, k) = l;
                if l != T::zero() {
                    for j in k + 1..=j_end {
                        let ukj = self.at(k, j);
                        if ukj != T::zero() {
                            *self.at_mut(i, j) -= l * ukj;
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solve in place.
    pub fn solve(&self, rhs: &mut [T]) {
        let n = self.n;
        let bw = self.bw;
        debug_assert_eq!(rhs.len(), n);
        for i in 0..n {
            let j0 = i.saturating_sub(bw);
            let mut acc = rhs[i];
            for j in j0..i {
                acc -= self.at(i, j) * rhs[j];
            }
            rhs[i] = acc;
        }
        for i in (0..n).rev() {
            let j1 = (i + bw).min(n - 1);
            let mut acc = rhs[i];
            for j in i + 1..=j1 {
                acc -= self.at(i, j) * rhs[j];
            }
            rhs[i] = acc / self.at(i, i);
        }
    }
}
