//! Tridiagonal LU factorization (Thomas algorithm) without pivoting.
//!
//! The matrices factored here are strictly diagonally dominant resolvent
//! matrices, for which the unpivoted factorization is stable. A vanishing
//! pivot is reported as a singular-matrix error.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// LU factorization of a tridiagonal matrix, reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct TridiagonalFactor<T> {
    /// Multipliers l_i = sub_i / d_{i-1}, length n (entry 0 unused).
    lower: Vec<T>,
    /// Pivots of U, length n.
    diag: Vec<T>,
    /// Original superdiagonal, length n (last entry unused).
    upper: Vec<T>,
}

impl<T: Scalar> TridiagonalFactor<T> {
    /// Factor the matrix with diagonals (`sub`, `diag`, `upper`); `sub[0]` and
    /// `upper[n-1]` are ignored.
    pub fn new(sub: &[T], diag: &[T], upper: &[T], context: &'static str) -> Result<Self> {
        let n = diag.len();
        assert_eq!(sub.len(), n);
        assert_eq!(upper.len(), n);
        let scale = diag
            .iter()
            .fold(T::zero(), |acc, &d| acc.max(d.abs()))
            .max(T::min_positive_value());
        let pivot_tol = scale * T::epsilon() * T::of(16.0);
        let mut lower = vec![T::zero(); n];
        let mut piv = diag.to_vec();
        for i in 1..n {
            if piv[i - 1].abs() <= pivot_tol {
                return Err(Error::SingularMatrix { context, row: i - 1 });
            }
            let l = sub[i] / piv[i - 1];
            lower[i] = l;
            piv[i] = piv[i] - l * upper[i - 1];
        }
        if piv[n - 1].abs() <= pivot_tol {
            return Err(Error::SingularMatrix { context, row: n - 1 });
        }
        Ok(TridiagonalFactor {
            lower,
            diag: piv,
            upper: upper.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Solve in place.
    pub fn solve(&self, rhs: &mut [T]) {
        let n = self.diag.len();
        debug_assert_eq!(rhs.len(), n);
        for i in 1..n {
            rhs[i] = rhs[i] - self.lower[i] * rhs[i - 1];
        }
        rhs[n - 1] = rhs[n - 1] / self.diag[n - 1];
        for i in (0..n - 1).rev() {
            rhs[i] = (rhs[i] - self.upper[i] * rhs[i + 1]) / self.diag[i];
        }
    }
}
