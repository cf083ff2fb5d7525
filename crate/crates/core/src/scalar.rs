//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point type the geometry and flow code is generic over.
///
/// Implemented for `f32` and `f64`. All tolerances quoted in the docs are
/// for `f64`; `f32` runs use [`Scalar::quad_tol`] and friends scaled to its
/// machine epsilon.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Sum
    + Send
    + Sync
    + Serialize
    + DeserializeOwned
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn of(x: f64) -> Self;

    fn of_usize(n: usize) -> Self;

    fn as_f64(self) -> f64;

    /// Absolute tolerance used by adaptive quadrature.
    fn quad_tol() -> Self {
        let floor = Self::epsilon() * Self::of(64.0);
        Self::of(1e-12).max(floor)
    }
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            #[inline]
            fn of(x: f64) -> Self {
                x as $t
            }
            #[inline]
            fn of_usize(n: usize) -> Self {
                n as $t
            }
            #[inline]
            fn as_f64(self) -> f64 {
                self as f64
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);
