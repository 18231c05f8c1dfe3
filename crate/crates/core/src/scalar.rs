//! Floating-point scalar abstraction.
//!
//! Everything numeric in the crate is generic over [`Scalar`], which is
//! implemented for `f32` and `f64`. Integer-valued objects (digit tables,
//! indices, cell ids) stay as `usize`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real scalar: f32 or f64
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 is representable in every Scalar")
    }

    fn of_usize(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize is representable in every Scalar")
    }

    fn to_f64_lossy(self) -> f64 {
        ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }

    /// Machine epsilon as f64, used to scale tolerances per precision.
    fn epsilon_f64() -> f64 {
        <Self as Float>::epsilon().to_f64_lossy()
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub(crate) fn czero<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

pub(crate) fn cone<T: Scalar>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// `exp(2πi j / m)` with exact values at the quarter turns.
pub fn root_of_unity<T: Scalar>(j: usize, m: usize) -> Complex<T> {
    let j = j % m;
    let (one, zero) = (T::one(), T::zero());
    if (4 * j).is_multiple_of(m) {
        return match 4 * j / m {
            0 => Complex::new(one, zero),
            1 => Complex::new(zero, one),
            2 => Complex::new(-one, zero),
            _ => Complex::new(zero, -one),
        };
    }
    let angle = 2.0 * std::f64::consts::PI * (j as f64) / (m as f64);
    Complex::new(T::of(angle.cos()), T::of(angle.sin()))
}
