use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar accepted by the analytic parts of the crate.
///
/// Implemented for `f32` and `f64`. Accuracy contracts quoted in the docs
/// (e.g. relative error `1e-10`) refer to `f64`; `f32` gets whatever its
/// epsilon allows.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` constant into `Self`.
    #[inline]
    fn c(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite constant")
    }

    /// Converts an integer into `Self`.
    #[inline]
    fn from_int(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("representable integer")
    }

    /// Lossy conversion to `f64`, used for error messages.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
