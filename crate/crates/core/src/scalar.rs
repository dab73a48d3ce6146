//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

/// Real floating point type the library is generic over: `f32` or `f64`.
///
/// Tolerances are written once as `f64` literals and mapped through
/// [`Real::tol`], which never returns less than a small multiple of the
/// type's machine epsilon. For `f64` the literal is used unchanged; for `f32`
/// sub-epsilon tolerances are widened to something the type can resolve.
pub trait Real:
    Float + FloatConst + NumAssign + Sum + Default + Debug + Display + Send + Sync + 'static
{
    /// Converts an `f64` constant into `Self`.
    fn lit(x: f64) -> Self;

    /// Converts `self` to `f64` for reporting.
    fn to_f64_lossy(self) -> f64;

    /// A tolerance of `x`, floored at `64·ε`.
    fn tol(x: f64) -> Self {
        let floor = Self::epsilon() * Self::lit(64.0);
        let t = Self::lit(x);
        if t < floor {
            floor
        } else {
            t
        }
    }

    /// `|a|` carrying the sign of `b` (Fortran `SIGN`).
    fn sign_of(a: Self, b: Self) -> Self {
        if b >= Self::zero() {
            a.abs()
        } else {
            -a.abs()
        }
    }
}

impl Real for f64 {
    #[inline]
    fn lit(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn lit(x: f64) -> Self {
        x as f32
    }
    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self as f64
    }
}
