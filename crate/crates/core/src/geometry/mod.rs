//! Discrete plane curves and their differential-geometric operators.
//!
//! A [`DiscreteCurve`] is an ordered list of nodes, either closed (the last
//! node connects back to the first, which is never repeated) or open. All
//! operators treat the nodes as samples of a smooth regular curve once there
//! are at least [`SMOOTH_MIN_NODES`] of them; shorter curves are measured as
//! plain polygons.

mod fields;
pub mod io;
mod osculating;
mod resample;
mod spline;

pub use fields::{curve_fields, fd_weights, CurveFields};
pub use osculating::{osculating_disc, osculating_discs_nested, OsculatingDisc};
pub use resample::resample_uniform;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Minimum node count for operators involving curvature derivatives.
pub const SMOOTH_MIN_NODES: usize = 8;

/// Segments shorter than this fraction of the mean spacing are degenerate.
pub const REGULARITY_RATIO: f64 = 1e-14;

/// Ordered planar nodes with a closed/open flag.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve<T> {
    nodes: Vec<Vec2<T>>,
    closed: bool,
}

impl<T: Scalar> DiscreteCurve<T> {
    pub fn new(nodes: Vec<Vec2<T>>, closed: bool) -> Self {
        Self { nodes, closed }
    }

    pub fn closed(nodes: Vec<Vec2<T>>) -> Self {
        Self::new(nodes, true)
    }

    pub fn open(nodes: Vec<Vec2<T>>) -> Self {
        Self::new(nodes, false)
    }

    pub fn nodes(&self) -> &[Vec2<T>] {
        &self.nodes
    }

    pub fn nodes_mut(&mut self) -> &mut [Vec2<T>] {
        &mut self.nodes
    }

    pub fn into_nodes(self) -> Vec<Vec2<T>> {
        self.nodes
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        match (self.closed, self.nodes.len()) {
            (_, 0) => 0,
            (true, n) => n,
            (false, n) => n - 1,
        }
    }

    /// Vector from node `i` to its successor (wrapping for closed curves).
    pub fn segment(&self, i: usize) -> Vec2<T> {
        let n = self.nodes.len();
        self.nodes[(i + 1) % n] - self.nodes[i]
    }

    pub fn chord_lengths(&self) -> Vec<T> {
        (0..self.segment_count()).map(|i| self.segment(i).norm()).collect()
    }

    pub fn min_spacing(&self) -> T {
        self.chord_lengths().into_iter().fold(T::infinity(), T::min)
    }

    /// Same point set traversed in the opposite direction. Closed curves keep
    /// node 0 as the starting node.
    pub fn reversed(&self) -> Self {
        let mut nodes = self.nodes.clone();
        if self.closed && !nodes.is_empty() {
            nodes[1..].reverse();
        } else {
            nodes.reverse();
        }
        Self::new(nodes, self.closed)
    }

    pub fn map(&self, f: impl Fn(Vec2<T>) -> Vec2<T>) -> Self {
        Self::new(self.nodes.iter().map(|&p| f(p)).collect(), self.closed)
    }

    pub fn translated(&self, v: Vec2<T>) -> Self {
        self.map(|p| p + v)
    }

    /// Rotation about the origin.
    pub fn rotated(&self, angle: T) -> Self {
        self.map(|p| p.rotated(angle))
    }

    pub fn scaled(&self, k: T) -> Self {
        self.map(|p| p * k)
    }

    pub fn cast<U: Scalar>(&self) -> DiscreteCurve<U> {
        DiscreteCurve::new(self.nodes.iter().map(|p| p.cast()).collect(), self.closed)
    }

    pub fn is_finite(&self) -> bool {
        self.nodes.iter().all(|p| p.is_finite())
    }

    /// Checks the regularity invariant and returns the chord lengths.
    pub fn check_regular(&self) -> Result<Vec<T>> {
        let chords = self.chord_lengths();
        if chords.is_empty() {
            return Err(Error::TooFewNodes { required: 2, got: self.len() });
        }
        let mean = chords.iter().copied().sum::<T>() / T::of_usize(chords.len());
        let floor = mean * T::of(REGULARITY_RATIO);
        if let Some(index) = chords.iter().position(|&c| !(c > floor)) {
            return Err(Error::NonRegular { index });
        }
        Ok(chords)
    }
}

/// Length of the circular arc through a chord of length `c` with curvature `kappa`.
pub(crate) fn arc_of_chord<T: Scalar>(c: T, kappa: T) -> T {
    let x = kappa.abs() * c * T::of(0.5);
    if x < T::of(1e-3) {
        let x2 = x * x;
        c * (T::one() + x2 / T::of(6.0) + T::of(0.075) * x2 * x2)
    } else {
        c * x.min(T::one()).asin() / x
    }
}

/// Signed area between a chord of length `c` and the circular arc of
/// curvature `kappa` over it; positive bulges lie to the right of travel.
pub(crate) fn segment_area<T: Scalar>(c: T, kappa: T) -> T {
    let x = kappa.abs() * c * T::of(0.5);
    if x < T::of(1e-6) {
        return kappa * c * c * c / T::of(12.0) + kappa * kappa * kappa * c.powi(5) / T::of(160.0);
    }
    let y = T::of(2.0) * x.min(T::one()).asin();
    kappa.signum() * y_minus_sin(y) / (T::of(2.0) * kappa * kappa)
}

fn y_minus_sin<T: Scalar>(y: T) -> T {
    if y >= T::one() {
        return y - y.sin();
    }
    let mut term = y;
    let mut sum = T::zero();
    for j in 1..16 {
        term = -term * y * y / T::of_usize(2 * j * (2 * j + 1));
        sum = sum - term;
        if term.abs() <= T::epsilon() * sum.abs() {
            break;
        }
    }
    sum
}

/// Per-segment arc lengths: circular-arc corrected chords for smooth samples,
/// plain chords for short polygons.
pub(crate) fn segment_arcs<T: Scalar>(curve: &DiscreteCurve<T>, chords: &[T]) -> Vec<T> {
    if curve.len() < SMOOTH_MIN_NODES {
        return chords.to_vec();
    }
    let kappa = fields::node_curvatures(curve, chords);
    let n = curve.len();
    chords.iter().enumerate().map(|(j, &c)| arc_of_chord(c, (kappa[j] + kappa[(j + 1) % n]) * T::of(0.5))).collect()
}

/// Total length by summed segment quadrature (wrap segment included for closed curves).
pub fn length<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<T> {
    let chords = curve.check_regular()?;
    Ok(segment_arcs(curve, &chords).into_iter().sum())
}

/// Signed enclosed area, positive for counterclockwise curves.
pub fn signed_area<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<T> {
    if !curve.is_closed() {
        return Err(Error::OpenCurve);
    }
    let n = curve.len();
    let p = curve.nodes();
    let half = T::of(0.5);
    let mut area: T = (0..n).map(|i| p[i].cross(p[(i + 1) % n]) * half).sum();
    if n >= SMOOTH_MIN_NODES {
        let chords = curve.check_regular()?;
        let kappa = fields::node_curvatures(curve, &chords);
        for (j, &c) in chords.iter().enumerate() {
            area = area + segment_area(c, (kappa[j] + kappa[(j + 1) % n]) * half);
        }
    }
    Ok(area)
}

/// Total tangent turning divided by 2π, rounded.
pub fn winding_number<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<i64> {
    if !curve.is_closed() {
        return Err(Error::OpenCurve);
    }
    curve.check_regular()?;
    let n = curve.len();
    let turning: T = (0..n)
        .map(|i| {
            let a = curve.segment((i + n - 1) % n);
            let b = curve.segment(i);
            a.cross(b).atan2(a.dot(b))
        })
        .sum();
    let w = (turning / T::TAU()).as_f64();
    let r = w.round();
    if !w.is_finite() || (w - r).abs() > 0.1 {
        return Err(Error::AmbiguousTurning(w));
    }
    Ok(r as i64)
}

/// Arc-length weighted centroid of the polyline.
pub fn centroid<T: Scalar>(curve: &DiscreteCurve<T>) -> Vec2<T> {
    let p = curve.nodes();
    let mut acc = Vec2::zero();
    let mut total = T::zero();
    for i in 0..curve.segment_count() {
        let c = curve.segment(i).norm();
        let m = (p[i] + p[(i + 1) % p.len()]) * T::of(0.5);
        acc += m * c;
        total = total + c;
    }
    acc * total.recip()
}

/// Copy translated to centroid zero and scaled to unit length.
pub fn normalize_shape<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<DiscreteCurve<T>> {
    let l = length(curve)?;
    let c = centroid(curve);
    Ok(curve.map(|p| (p - c) * l.recip()))
}

fn point_segment_distance<T: Scalar>(p: Vec2<T>, a: Vec2<T>, b: Vec2<T>) -> T {
    let ab = b - a;
    let len2 = ab.norm_sq();
    let t = if len2 > T::zero() { ((p - a).dot(ab) / len2).max(T::zero()).min(T::one()) } else { T::zero() };
    (p - (a + ab * t)).norm()
}

fn directed_hausdorff<T: Scalar>(from: &DiscreteCurve<T>, to: &DiscreteCurve<T>) -> T {
    let q = to.nodes();
    let m = to.segment_count();
    from.nodes()
        .iter()
        .map(|&p| {
            if m == 0 {
                return (p - q[0]).norm();
            }
            (0..m).map(|j| point_segment_distance(p, q[j], q[(j + 1) % q.len()])).fold(T::infinity(), T::min)
        })
        .fold(T::zero(), T::max)
}

/// Symmetric Hausdorff distance between the two polylines, measured from
/// nodes of each to the segments of the other.
pub fn hausdorff_distance<T: Scalar>(a: &DiscreteCurve<T>, b: &DiscreteCurve<T>) -> T {
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}
