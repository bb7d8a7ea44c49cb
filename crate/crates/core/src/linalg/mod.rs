//! Small dense/banded/tridiagonal linear algebra kernels used by the solver.

pub mod banded;
pub mod dense;
pub mod eigen;
pub mod expm;
pub mod tridiag;

pub use banded::BandedLu;
pub use dense::DenseMatrix;
pub use eigen::SymmetricEigen;
pub use expm::{expm, phi1_combination};
pub use tridiag::TridiagonalFactor;
