//! Floating-point abstraction shared by every numerical routine.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar the crate is generic over (`f32` or `f64`).
///
/// Tolerances throughout the crate are written for double precision and
/// rescaled to the working precision through [`Real::tol`].
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal into the working precision.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    /// Rescales a tolerance stated for `f64` to the working precision.
    #[inline]
    fn tol(x: f64) -> Self {
        let ratio = Self::epsilon().to_f64().unwrap_or(f64::EPSILON) / f64::EPSILON;
        Self::lit(x * ratio)
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over a [`Real`] scalar.
pub type Cx<T> = Complex<T>;

#[inline]
pub(crate) fn cx<T: Real>(re: T, im: T) -> Cx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn re<T: Real>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}
