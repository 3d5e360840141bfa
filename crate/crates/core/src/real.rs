//! Scalar abstraction for all numerics in this crate.
//!
//! Every algorithm is generic over [`Real`], a floating-point scalar with the
//! elementary functions, conversions and assignment operators the kernels
//! need. `f64` is the working precision for all certified results; `f32` is
//! provided for quick smoke runs (stated tolerances generally assume `f64`).

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Floating-point scalar usable by every solver in this crate.
pub trait Real:
    'static + Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp
{
    /// Machine epsilon for the concrete type.
    fn eps() -> Self {
        Self::epsilon()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for embedding an `f64` literal into the generic scalar type.
///
/// Panics only if the literal is not representable, which for the finite
/// constants used in this crate cannot happen.
#[inline]
pub(crate) fn c<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}
