//! Scalar abstraction: everything numeric in this crate is generic over the
//! real field type, with complex values carried by `num_complex::Complex<T>`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar type underlying all complex arithmetic: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Sum + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts a literal `f64` constant into `T`.
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("finite f64 constant must convert")
}

/// `1/sqrt(2)`, the amplitude of every two-term basis state here.
pub(crate) fn inv_sqrt2<T: Real>() -> T {
    T::one() / T::SQRT_2()
}
