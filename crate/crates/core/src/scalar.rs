//! Scalar abstractions shared by the analytic formulas.
//!
//! Two tiers exist. [`Rate`] is any ordered field, which is enough for the
//! purely rational formulas (noise-free capacity, scheme rate) and lets them be
//! evaluated exactly over `Ratio<i64>`. [`Real`] adds the transcendental
//! functions needed for entropies, exponentials and root finding, and is
//! implemented for `f32` and `f64`.

use num_traits::{Float, FloatConst, FromPrimitive, Num};
use std::fmt::Debug;

/// An ordered field: the minimum structure the rational rate formulas need.
pub trait Rate: Num + Copy + PartialOrd + Debug {}

impl<T: Num + Copy + PartialOrd + Debug> Rate for T {}

/// floating point: f32 or f64
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Send + Sync + 'static {
    /// Converts an `f64` literal, which is always representable up to rounding.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to every Real")
    }

    #[inline]
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("integer converts to every Real")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Clamps a possibly negative rate to zero, reporting whether clamping happened.
#[inline]
pub(crate) fn clamp_nonnegative<T: Rate>(x: T) -> (T, bool) {
    if x < T::zero() {
        (T::zero(), true)
    } else {
        (x, false)
    }
}
