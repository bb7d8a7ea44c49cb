//! Tensor grid on the square [−1, 1]² and grid functions on its interior.
//!
//! The grid holds the N×N interior nodes x_i = −1 + i·s, i = 1, …, N with
//! spacing s = 2/(N+1); boundary nodes are never stored (homogeneous
//! Dirichlet data is built into the operators). Grid functions are stored
//! row-major with the x index fastest: flat index = j·N + i.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Interior tensor grid of an N×N discretization of [−1, 1]².
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D<T> {
    n: usize,
    spacing: T,
}

impl<T: Scalar> Grid2D<T> {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "grid needs at least one interior point");
        let spacing = T::of(2.0) / (T::of_usize(n) + T::one());
        Grid2D { n, spacing }
    }

    /// Interior points per dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mesh width s = 2/(N+1).
    pub fn spacing(&self) -> T {
        self.spacing
    }

    /// Total number of interior nodes N².
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coordinate of the 0-based interior index along one dimension.
    pub fn coord(&self, i: usize) -> T {
        debug_assert!(i < self.n);
        -T::one() + T::of_usize(i + 1) * self.spacing
    }

    /// (x, y) coordinates of interior node (i, j).
    pub fn node(&self, i: usize, j: usize) -> (T, T) {
        (self.coord(i), self.coord(j))
    }

    /// Flat index of interior node (i, j), x fastest.
    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.n && j < self.n);
        j * self.n + i
    }

    /// Corner coordinates, counter-clockwise from (−1, −1).
    pub fn corners(&self) -> [(T, T); 4] {
        let one = T::one();
        [(-one, -one), (one, -one), (one, one), (-one, one)]
    }

    /// Flat indices of the four corner-adjacent interior nodes, in the same
    /// counter-clockwise order as [`Self::corners`].
    pub fn corner_adjacent_indices(&self) -> [usize; 4] {
        let n = self.n;
        [
            self.index(0, 0),
            self.index(n - 1, 0),
            self.index(n - 1, n - 1),
            self.index(0, n - 1),
        ]
    }
}

/// A scalar field sampled on the interior nodes of a [`Grid2D`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<T> {
    n: usize,
    values: Vec<T>,
}

impl<T: Scalar> GridFunction<T> {
    pub fn zeros(grid: &Grid2D<T>) -> Self {
        GridFunction {
            n: grid.n(),
            values: vec![T::zero(); grid.len()],
        }
    }

    pub fn constant(grid: &Grid2D<T>, value: T) -> Self {
        GridFunction {
            n: grid.n(),
            values: vec![value; grid.len()],
        }
    }

    /// Sample `f(x, y)` on every interior node.
    pub fn from_fn(grid: &Grid2D<T>, mut f: impl FnMut(T, T) -> T) -> Self {
        let n = grid.n();
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..n {
            let y = grid.coord(j);
            for i in 0..n {
                values.push(f(grid.coord(i), y));
            }
        }
        GridFunction { n, values }
    }

    /// Wrap an existing value vector; its length must be N².
    pub fn from_values(grid: &Grid2D<T>, values: Vec<T>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                got: values.len(),
                context: "grid function values",
            });
        }
        Ok(GridFunction { n: grid.n(), values })
    }

    /// Interior points per dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [T] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.values[j * self.n + i]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.values[j * self.n + i] = value;
    }

    pub fn fill(&mut self, value: T) {
        self.values.iter_mut().for_each(|v| *v = value);
    }

    /// self ← self + c · other.
    pub fn add_scaled(&mut self, c: T, other: &GridFunction<T>) {
        debug_assert_eq!(self.len(), other.len());
        for (v, &o) in self.values.iter_mut().zip(&other.values) {
            *v += c * o;
        }
    }

    pub fn scale(&mut self, c: T) {
        self.values.iter_mut().for_each(|v| *v *= c);
    }

    pub fn max_abs(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, &v| acc.max(v.abs()))
    }

    /// Exact (bitwise) zero test.
    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(|&v| v == T::zero())
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for GridFunction<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.values[j * self.n + i]
    }
}
