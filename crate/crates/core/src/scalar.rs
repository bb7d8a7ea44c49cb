//! Floating-point scalar abstraction.
//!
//! All numerical kernels in this crate are generic over [`Scalar`], which is
//! implemented for `f32` and `f64`. Double precision is the intended working
//! type; the concrete aliases at the crate root are all `f64`.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Floating point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Shorthand for `T::from_f64(x).unwrap()`; every constant in this crate
    /// is exactly representable in `f32` range.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    /// Shorthand for converting a grid size or index.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
