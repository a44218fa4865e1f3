//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real floating-point type the matrix and transform code is generic over.
///
/// The tolerances scale with the precision of the type: the `f64` values are
/// the ones every documented check is pinned to.
pub trait Real:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Orthogonality, commutation and hermiticity tolerance.
    fn tol() -> Self;

    /// Reconstruction tolerance (tensor factorization, ±1 rounding).
    fn recon_tol() -> Self;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal fits the scalar type")
    }
}

impl Real for f64 {
    #[inline]
    fn tol() -> Self {
        1e-10
    }
    #[inline]
    fn recon_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    #[inline]
    fn tol() -> Self {
        1e-4
    }
    #[inline]
    fn recon_tol() -> Self {
        1e-3
    }
}

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cr<T: Real>(re: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::zero())
}
