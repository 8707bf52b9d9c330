//! Scalar plumbing shared by every module.
//!
//! All numerics run in complex arithmetic over a generic real type `T`.
//! `f64` is the type the CLI and the fixtures use; `f32` works for
//! everything except tolerances tuned for double precision.

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar the library is generic over.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive {}

impl<T> Real for T where T: RealField + Copy + FromPrimitive + ToPrimitive {}

pub type C<T> = Complex<T>;
pub type CMat<T> = DMatrix<Complex<T>>;
pub type CVec<T> = DVector<Complex<T>>;

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal must be representable")
}

#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(lit(re), lit(im))
}

#[inline]
pub fn creal<T: Real>(x: T) -> C<T> {
    Complex::new(x, T::zero())
}

#[inline]
pub fn czero<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn cone<T: Real>() -> C<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub fn eps<T: Real>() -> T {
    T::default_epsilon()
}

/// Modulus of a complex scalar.
#[inline]
pub fn abs<T: Real>(z: C<T>) -> T {
    z.re.hypot(z.im)
}

/// Mixed absolute/relative distance `|a-b| / max(1, |a|, |b|)`.
///
/// Used for every eigenvalue comparison so that tolerances behave
/// sensibly both near the origin and for large eigenvalues.
pub fn rel_dist<T: Real>(a: C<T>, b: C<T>) -> T {
    let scale = T::one().max(abs(a)).max(abs(b));
    abs(a - b) / scale
}

pub fn is_real_value<T: Real>(z: C<T>) -> bool {
    z.im == T::zero()
}
