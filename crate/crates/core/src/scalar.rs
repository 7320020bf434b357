//! Scalar abstraction for profile and field arithmetic.

use num_traits::{Float, FromPrimitive, NumCast};

/// Floating point scalar used by every continuum computation.
///
/// `f32` and `f64` both qualify; the lattice layer never uses this trait
/// (its state and rates are exact integers).
pub trait Real:
    Float
    + FromPrimitive
    + NumCast
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Conversion from `f64`, panicking if the value is not representable.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 value not representable in scalar type")
    }

    /// Conversion from a lattice size or index.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize value not representable in scalar type")
    }

    /// Widening view for printing and cross-type comparisons.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar must widen to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
