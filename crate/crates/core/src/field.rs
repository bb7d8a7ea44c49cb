//! Spatially varying random inputs via the truncated Karhunen–Loève
//! expansion, with covariance eigenpairs computed by a symmetrized Nyström
//! discretization of the covariance integral equation.

use crate::error::{Error, Result};
use crate::grid::{Grid2D, GridFunction};
use crate::linalg::{DenseMatrix, SymmetricEigen};
use crate::scalar::Scalar;
use rayon::prelude::*;

/// Relative tolerance below which covariance eigenvalues may dip negative
/// before the kernel is rejected as indefinite.
pub const NEGATIVE_EIGENVALUE_TOL: f64 = 1e-8;

/// Covariance kernel C_v(x₁, x₂), symmetric positive semi-definite.
#[derive(Clone, Debug, PartialEq)]
pub enum CovarianceKernel<T> {
    /// exp(−‖x₁ − x₂‖² / ℓ²).
    SquaredExponential { length_scale: T },
    /// Constant kernel C ≡ value (rank one).
    Constant { value: T },
}

impl<T: Scalar> CovarianceKernel<T> {
    pub fn eval(&self, x1: (T, T), x2: (T, T)) -> T {
        match *self {
            CovarianceKernel::SquaredExponential { length_scale } => {
                let dx = x1.0 - x2.0;
                let dy = x1.1 - x2.1;
                (-(dx * dx + dy * dy) / (length_scale * length_scale)).exp()
            }
            CovarianceKernel::Constant { value } => value,
        }
    }
}

/// Deterministic mean component of the random field.
#[derive(Clone, Debug, PartialEq)]
pub enum MeanField<T> {
    Zero,
    Constant(T),
}

impl<T: Scalar> MeanField<T> {
    pub fn eval(&self, _x: T, _y: T) -> T {
        match *self {
            MeanField::Zero => T::zero(),
            MeanField::Constant(c) => c,
        }
    }
}

/// One-dimensional quadrature weights for the interior nodes x_i = −1 + i·s.
///
/// Composite trapezoidal weights on [x₁, x_N] plus end-strip contributions
/// with a first-derivative (Gregory-type) correction, so the rule integrates
/// constants on [−1, 1] exactly and smooth functions to O(s²):
/// w = s · (2, ½, 1, …, 1, ½, 2). Falls back to w = s · (3/2, 1, …, 1, 3/2)
/// when fewer than five nodes are available.
pub fn quadrature_weights_1d<T: Scalar>(grid: &Grid2D<T>) -> Vec<T> {
    let n = grid.n();
    let s = grid.spacing();
    if n == 1 {
        return vec![T::of(2.0)];
    }
    let mut w = vec![s; n];
    if n >= 5 {
        w[0] = T::of(2.0) * s;
        w[n - 1] = T::of(2.0) * s;
        w[1] = T::of(0.5) * s;
        w[n - 2] = T::of(0.5) * s;
    } else {
        w[0] = T::of(1.5) * s;
        w[n - 1] = T::of(1.5) * s;
    }
    w
}

/// Product quadrature weights over all N² interior nodes, x fastest.
pub fn quadrature_weights_2d<T: Scalar>(grid: &Grid2D<T>) -> Vec<T> {
    let w1 = quadrature_weights_1d(grid);
    let n = grid.n();
    let mut w = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            w.push(w1[i] * w1[j]);
        }
    }
    w
}

/// The symmetrized Nyström matrix W^{1/2} C W^{1/2} of the covariance
/// operator over the interior grid.
pub fn nystrom_matrix<T: Scalar>(
    kernel: &CovarianceKernel<T>,
    grid: &Grid2D<T>,
) -> DenseMatrix<T> {
    let n = grid.n();
    let total = n * n;
    let pts: Vec<(T, T)> = (0..total)
        .map(|idx| grid.node(idx % n, idx / n))
        .collect();
    let sqrt_w: Vec<T> = quadrature_weights_2d(grid)
        .into_iter()
        .map(|w| w.sqrt())
        .collect();
    let mut m = DenseMatrix::zeros(total, total);
    m.data_mut()
        .par_chunks_mut(total)
        .enumerate()
        .for_each(|(row, out)| {
            let swr = sqrt_w[row];
            let pr = pts[row];
            for (col, o) in out.iter_mut().enumerate() {
                *o = swr * kernel.eval(pr, pts[col]) * sqrt_w[col];
            }
        });
    m
}

/// Truncated Karhunen–Loève representation of a random field on the grid.
#[derive(Clone, Debug)]
pub struct KLExpansion<T> {
    grid: Grid2D<T>,
    mean: MeanField<T>,
    mean_field: GridFunction<T>,
    eigenvalues: Vec<T>,
    eigenfunctions: Vec<GridFunction<T>>,
}

impl<T: Scalar> KLExpansion<T> {
    /// Solve the discretized covariance eigenproblem and keep the `m` largest
    /// eigenpairs, with a zero mean field.
    pub fn solve(kernel: &CovarianceKernel<T>, grid: &Grid2D<T>, m: usize) -> Result<Self> {
        Self::solve_with_mean(kernel, grid, m, MeanField::Zero)
    }

    /// Solve the eigenproblem with an explicit mean field.
    ///
    /// Eigenfunctions are rescaled to be orthonormal under the quadrature
    /// inner product and sign-fixed so that the first entry of largest
    /// magnitude is positive. Tiny negative eigenvalues (above −1e−8·λ₁) are
    /// clamped to zero.
    pub fn solve_with_mean(
        kernel: &CovarianceKernel<T>,
        grid: &Grid2D<T>,
        m: usize,
        mean: MeanField<T>,
    ) -> Result<Self> {
        let total = grid.len();
        if m > total {
            return Err(Error::DimensionMismatch {
                expected: total,
                got: m,
                context: "KL truncation exceeds grid size",
            });
        }
        let matrix = nystrom_matrix(kernel, grid);
        let eig = SymmetricEigen::new(&matrix);
        let lambda1 = eig.eigenvalues[0];
        let tol = T::of(NEGATIVE_EIGENVALUE_TOL);
        if lambda1 <= T::zero() {
            return Err(Error::IndefiniteKernel {
                negative_count: total,
                m,
                tol: NEGATIVE_EIGENVALUE_TOL,
            });
        }
        let neg_cut = -tol * lambda1;
        let negative_count = eig.eigenvalues.iter().filter(|&&l| l < neg_cut).count();
        let retained_bad = eig.eigenvalues[..m].iter().any(|&l| l < neg_cut);
        if negative_count > m || retained_bad {
            return Err(Error::IndefiniteKernel {
                negative_count,
                m,
                tol: NEGATIVE_EIGENVALUE_TOL,
            });
        }
        let sqrt_w: Vec<T> = quadrature_weights_2d(grid)
            .into_iter()
            .map(|w| w.sqrt())
            .collect();
        let mut eigenvalues = Vec::with_capacity(m);
        let mut eigenfunctions = Vec::with_capacity(m);
        for k in 0..m {
            eigenvalues.push(eig.eigenvalues[k].max(T::zero()));
            let mut values: Vec<T> = (0..total)
                .map(|i| eig.vectors[(i, k)] / sqrt_w[i])
                .collect();
            let mut best = 0;
            let mut best_abs = T::zero();
            for (i, &v) in values.iter().enumerate() {
                if v.abs() > best_abs {
                    best_abs = v.abs();
                    best = i;
                }
            }
            if values[best] < T::zero() {
                values.iter_mut().for_each(|v| *v = -*v);
            }
            eigenfunctions.push(GridFunction::from_values(grid, values)?);
        }
        let mean_field = GridFunction::from_fn(grid, |x, y| mean.eval(x, y));
        Ok(KLExpansion {
            grid: *grid,
            mean,
            mean_field,
            eigenvalues,
            eigenfunctions,
        })
    }

    pub fn grid(&self) -> &Grid2D<T> {
        &self.grid
    }

    /// Truncation level m.
    pub fn truncation(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Eigenvalues, descending, clamped to be non-negative.
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// k-th quadrature-orthonormal eigenfunction (0-based).
    pub fn eigenfunction(&self, k: usize) -> &GridFunction<T> {
        &self.eigenfunctions[k]
    }

    pub fn mean(&self) -> &MeanField<T> {
        &self.mean
    }

    /// Mean field v̄ sampled on the grid.
    pub fn mean_field(&self) -> &GridFunction<T> {
        &self.mean_field
    }

    /// Realize the field v̄ + Σ √λ_k e_k z_k for a given sample vector z.
    pub fn sample_field(&self, z: &[T]) -> Result<GridFunction<T>> {
        if z.len() != self.truncation() {
            return Err(Error::DimensionMismatch {
                expected: self.truncation(),
                got: z.len(),
                context: "KL sample vector",
            });
        }
        let mut out = self.mean_field.clone();
        for (k, &zk) in z.iter().enumerate() {
            out.add_scaled(self.eigenvalues[k].sqrt() * zk, &self.eigenfunctions[k]);
        }
        Ok(out)
    }

    /// Quadrature inner product ⟨f, g⟩ = Σ w_i f_i g_i on the grid.
    pub fn quadrature_inner(&self, f: &GridFunction<T>, g: &GridFunction<T>) -> T {
        quadrature_weights_2d(&self.grid)
            .into_iter()
            .zip(f.values())
            .zip(g.values())
            .map(|((w, &a), &b)| w * a * b)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_integrates_constants_exactly() {
        for n in [1usize, 2, 3, 4, 5, 8, 17] {
            let grid = Grid2D::<f64>::new(n);
            let total: f64 = quadrature_weights_2d(&grid).into_iter().sum();
            assert!((total - 4.0).abs() < 1e-13, "n={n}: {total}");
        }
    }

    #[test]
    fn constant_kernel_is_rank_one() {
        let grid = Grid2D::<f64>::new(8);
        let kle = KLExpansion::solve(
            &CovarianceKernel::Constant { value: 1.0 },
            &grid,
            1,
        )
        .unwrap();
        assert!((kle.eigenvalues()[0] - 4.0).abs() < 1e-10);
        for &v in kle.eigenfunction(0).values() {
            assert!((v - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenfunctions_quadrature_orthonormal() {
        let grid = Grid2D::<f64>::new(10);
        let kernel = CovarianceKernel::SquaredExponential { length_scale: 1.0 };
        let kle = KLExpansion::solve(&kernel, &grid, 6).unwrap();
        for j in 0..6 {
            for k in 0..6 {
                let dot = kle.quadrature_inner(kle.eigenfunction(j), kle.eigenfunction(k));
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-8, "({j},{k}): {dot}");
            }
        }
    }

    #[test]
    fn eigenvalues_sorted_and_positive_for_gaussian() {
        let grid = Grid2D::<f64>::new(12);
        let kernel = CovarianceKernel::SquaredExponential { length_scale: 1.0 };
        let kle = KLExpansion::solve(&kernel, &grid, 10).unwrap();
        let lam = kle.eigenvalues();
        for w in lam.windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert!(lam[0] > 1.0 && lam[9] > 0.0);
    }

    #[test]
    fn sample_field_matches_direct_sum() {
        let grid = Grid2D::<f64>::new(6);
        let kernel = CovarianceKernel::SquaredExponential { length_scale: 1.0 };
        let kle = KLExpansion::solve(&kernel, &grid, 3).unwrap();
        let z = [0.3, -1.2, 0.7];
        let field = kle.sample_field(&z).unwrap();
        for idx in 0..grid.len() {
            let mut want = 0.0;
            for k in 0..3 {
                want += kle.eigenvalues()[k].sqrt()
                    * kle.eigenfunction(k).values()[idx]
                    * z[k];
            }
            assert!((field.values()[idx] - want).abs() < 1e-14);
        }
    }

    #[test]
    fn sample_field_zero_returns_mean() {
        let grid = Grid2D::<f64>::new(5);
        let kernel = CovarianceKernel::SquaredExponential { length_scale: 1.0 };
        let kle =
            KLExpansion::solve_with_mean(&kernel, &grid, 2, MeanField::Constant(0.25)).unwrap();
        let field = kle.sample_field(&[0.0, 0.0]).unwrap();
        for &v in field.values() {
            assert_eq!(v, 0.25);
        }
    }

    #[test]
    fn sample_dimension_mismatch() {
        let grid = Grid2D::<f64>::new(5);
        let kernel = CovarianceKernel::SquaredExponential { length_scale: 1.0 };
        let kle = KLExpansion::solve(&kernel, &grid, 2).unwrap();
        assert!(kle.sample_field(&[1.0]).is_err());
    }

    #[test]
    fn truncation_larger_than_grid_rejected() {
        let grid = Grid2D::<f64>::new(3);
        let kernel = CovarianceKernel::SquaredExponential { length_scale: 1.0 };
        assert!(KLExpansion::solve(&kernel, &grid, 10).is_err());
    }

    #[test]
    fn negated_kernel_rejected_as_indefinite() {
        let grid = Grid2D::<f64>::new(4);
        let kernel = CovarianceKernel::Constant { value: -1.0 };
        assert!(matches!(
            KLExpansion::solve(&kernel, &grid, 1),
            Err(Error::IndefiniteKernel { .. })
        ));
    }

    #[test]
    fn mercer_partial_trace_bound() {
        let grid = Grid2D::<f64>::new(8);
        let kernel = CovarianceKernel::SquaredExponential { length_scale: 1.0 };
        let trace: f64 = quadrature_weights_2d(&grid)
            .iter()
            .enumerate()
            .map(|(idx, &w)| {
                let p = grid.node(idx % 8, idx / 8);
                w * kernel.eval(p, p)
            })
            .sum();
        let mut prev_gap = f64::INFINITY;
        for m in [1usize, 4, 16, 64] {
            let kle = KLExpansion::solve(&kernel, &grid, m).unwrap();
            let partial: f64 = kle.eigenvalues().iter().sum();
            let gap = trace - partial;
            assert!(gap >= -1e-10, "m={m}: partial sum exceeds trace");
            assert!(gap <= prev_gap + 1e-12, "gap must shrink with m");
            prev_gap = gap;
        }
    }
}
