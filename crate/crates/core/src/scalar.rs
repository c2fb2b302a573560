//! Scalar abstraction for edge weights and metric scores.

use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar used for edge weights, path lengths, and metric
/// scores. Implemented for `f32` and `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Tolerance for weight and score comparisons.
    fn weight_tolerance() -> Self {
        Self::from_f64(1e-9).unwrap().max(Self::epsilon() * Self::from_f64(32.0).unwrap())
    }

    fn half() -> Self {
        Self::from_f64(0.5).unwrap()
    }

    fn two() -> Self {
        Self::from_f64(2.0).unwrap()
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum<T>
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// `|a - b| <= tol * max(1, |a|, |b|)`; non-finite values compare exactly.
pub fn approx_eq<T: Scalar>(a: T, b: T, tol: T) -> bool {
    if !a.is_finite() || !b.is_finite() {
        return a == b;
    }
    (a - b).abs() <= tol * T::one().max(a.abs()).max(b.abs())
}
