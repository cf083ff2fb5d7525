//! Discrete curve diffusion and elastic flow for planar curves.
//!
//! Everything numeric is generic over [`Scalar`] (implemented for `f32` and
//! `f64`); the aliases below fix the precision for the common cases.

// `!(a < b)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod analytic;
pub mod banded;
pub mod error;
pub mod flow;
pub mod geometry;
pub mod monitor;
pub mod quadrature;
pub mod scalar;
pub mod soliton;
pub mod vec2;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use vec2::Vec2;

pub type Point = vec2::Vec2<f64>;
pub type Point32 = vec2::Vec2<f32>;
pub type Curve = geometry::DiscreteCurve<f64>;
pub type Curve32 = geometry::DiscreteCurve<f32>;
pub type CurveSpec = analytic::AnalyticCurveSpec<f64>;
pub type CurveSpec32 = analytic::AnalyticCurveSpec<f32>;
