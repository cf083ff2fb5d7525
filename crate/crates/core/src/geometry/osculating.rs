use std::ops::Range;

use super::{curve_fields, CurveFields, DiscreteCurve};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Osculating circle at a node: radius 1/|κ|, centre γ + ν/κ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OsculatingDisc<T> {
    pub center: Vec2<T>,
    pub radius: T,
}

impl<T: Scalar> OsculatingDisc<T> {
    /// True if `other` lies inside `self` up to an absolute slack.
    pub fn contains(&self, other: &Self, slack: T) -> bool {
        (self.center - other.center).norm() + other.radius <= self.radius + slack
    }
}

/// `None` where the curvature vanishes.
pub fn osculating_disc<T: Scalar>(
    curve: &DiscreteCurve<T>,
    fields: &CurveFields<T>,
    i: usize,
) -> Option<OsculatingDisc<T>> {
    let k = fields.kappa[i];
    if k == T::zero() {
        return None;
    }
    Some(OsculatingDisc { center: curve.nodes()[i] + fields.normal[i] * k.recip(), radius: k.abs().recip() })
}

/// Checks that the osculating discs over `range` are pairwise nested.
///
/// Requires curvature strictly monotone and of one sign on the range. Along
/// increasing |κ| every later disc must sit inside every earlier one; for
/// decreasing |κ| the containment is reversed. Neighbouring discs nest with
/// a margin of order h³ while sampled centres and radii carry O(h²) error, so
/// containment is tested with slack `h² max|κ| / 64` (h the mean spacing).
pub fn osculating_discs_nested<T: Scalar>(curve: &DiscreteCurve<T>, range: Range<usize>) -> Result<bool> {
    if range.end > curve.len() || range.len() < 2 {
        return Err(Error::HypothesisViolated(format!("index range {range:?} unusable")));
    }
    let fields = curve_fields(curve)?;
    let k = &fields.kappa[range.clone()];
    let positive = k[0] > T::zero();
    if k.iter().any(|&v| v == T::zero() || (v > T::zero()) != positive) {
        return Err(Error::HypothesisViolated("curvature vanishes or changes sign".into()));
    }
    let mag: Vec<T> = k.iter().map(|v| v.abs()).collect();
    let increasing = mag.windows(2).all(|w| w[1] > w[0]);
    let decreasing = mag.windows(2).all(|w| w[1] < w[0]);
    if !increasing && !decreasing {
        return Err(Error::HypothesisViolated("curvature is not strictly monotone".into()));
    }
    let discs: Vec<OsculatingDisc<T>> =
        range.map(|i| osculating_disc(curve, &fields, i).expect("nonzero curvature")).collect();
    let h = fields.length() / T::of_usize(curve.segment_count());
    let kmax = mag.iter().copied().fold(T::zero(), T::max);
    let slack = h * h * kmax / T::of(64.0);
    for i in 0..discs.len() {
        for j in i + 1..discs.len() {
            let ok = if increasing { discs[i].contains(&discs[j], slack) } else { discs[j].contains(&discs[i], slack) };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
