//! Scalar abstraction: the whole library is generic over the floating-point
//! type carrying norms, distances and tolerances.

use std::fmt::{Debug, Display};
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable as a norm/distance value: f32 or f64.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + AddAssign + Debug + Display + Send + Sync + 'static
{
    /// Conversion from an f64 literal; panics on values the type cannot
    /// represent at all (never happens for the finite constants used here).
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Shorthand for `S::of(v)`.
pub fn real<S: Real>(v: f64) -> S {
    S::of(v)
}
