use std::ops::{Add, Mul};

use super::{segment_arcs, DiscreteCurve, SMOOTH_MIN_NODES};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Per-node frame, curvature and arc-length data of a [`DiscreteCurve`].
///
/// `normal` is `tangent` rotated counterclockwise by a right angle, so a
/// counterclockwise circle has inward normal and positive curvature.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveFields<T> {
    pub tangent: Vec<Vec2<T>>,
    pub normal: Vec<Vec2<T>>,
    pub kappa: Vec<T>,
    pub kappa_s: Vec<T>,
    pub kappa_ss: Vec<T>,
    /// Arc-length weight of each node; sums to the curve length.
    pub dl: Vec<T>,
    /// Cumulative arc length, zero at node 0.
    pub s: Vec<T>,
}

impl<T: Scalar> CurveFields<T> {
    pub fn len(&self) -> usize {
        self.kappa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappa.is_empty()
    }

    pub fn length(&self) -> T {
        self.dl.iter().copied().sum()
    }

    /// Arc-length weighted sum of a per-node quantity.
    pub fn integrate(&self, f: impl Fn(usize) -> T) -> T {
        self.dl.iter().enumerate().map(|(i, &w)| f(i) * w).sum()
    }

    /// Arc-length weighted L² norm of a per-node quantity.
    pub fn l2(&self, f: impl Fn(usize) -> T) -> T {
        self.integrate(|i| {
            let v = f(i);
            v * v
        })
        .sqrt()
    }
}

/// Finite-difference weights for the `order`-th derivative at `x0` from
/// samples at `xs` (Fornberg's recursion).
pub fn fd_weights<T: Scalar>(x0: T, xs: &[T], order: usize) -> Vec<T> {
    let n = xs.len();
    assert!(n > order, "need more points than the derivative order");
    let mut c = vec![vec![T::zero(); order + 1]; n];
    c[0][0] = T::one();
    let mut c1 = T::one();
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = T::one();
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 = c2 * c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (T::of_usize(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - T::of_usize(k) * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

#[derive(Clone, Copy)]
struct Stencil<T> {
    idx: [usize; 4],
    w: [T; 4],
    len: usize,
}

impl<T: Scalar> Stencil<T> {
    fn build(idx: &[usize], x0: T, xs: &[T], order: usize) -> Self {
        let w = fd_weights(x0, xs, order);
        let mut s = Stencil { idx: [0; 4], w: [T::zero(); 4], len: idx.len() };
        s.idx[..idx.len()].copy_from_slice(idx);
        s.w[..idx.len()].copy_from_slice(&w);
        s
    }

    fn apply<V>(&self, f: &[V]) -> V
    where
        V: Copy + Add<Output = V> + Mul<T, Output = V>,
    {
        let mut acc = f[self.idx[0]] * self.w[0];
        for k in 1..self.len {
            acc = acc + f[self.idx[k]] * self.w[k];
        }
        acc
    }
}

/// Derivative stencils w.r.t. arc length. Interior (and all closed-curve)
/// nodes use the three-point nonuniform stencil; open-curve endpoints use
/// one-sided stencils of `order + 2` points.
fn stencils<T: Scalar>(closed: bool, spacing: &[T], s: &[T], order: usize) -> Vec<Stencil<T>> {
    let n = s.len();
    (0..n)
        .map(|i| {
            if closed || (i > 0 && i + 1 < n) {
                let prev = (i + n - 1) % n;
                let hm = spacing[prev];
                let hp = spacing[i];
                Stencil::build(&[prev, i, (i + 1) % n], T::zero(), &[-hm, T::zero(), hp], order)
            } else {
                let width = order + 2;
                let idx: Vec<usize> =
                    if i == 0 { (0..width).collect() } else { (0..width).map(|k| n - 1 - k).collect() };
                let xs: Vec<T> = idx.iter().map(|&j| s[j]).collect();
                Stencil::build(&idx, s[i], &xs, order)
            }
        })
        .collect()
}

/// Turning angle at each node divided by the mean of its two chords. Open
/// curves get their end values by quadratic extrapolation of the interior.
pub(crate) fn node_curvatures<T: Scalar>(curve: &DiscreteCurve<T>, chords: &[T]) -> Vec<T> {
    let p = curve.nodes();
    let n = p.len();
    let turning = |i: usize| {
        let (a, b, c) = (p[(i + n - 1) % n], p[i], p[(i + 1) % n]);
        let (e1, e2) = (b - a, c - b);
        let theta = e1.cross(e2).atan2(e1.dot(e2));
        let den = chords[(i + n - 1) % n] + chords[i];
        if den > T::zero() {
            (theta + theta) / den
        } else {
            T::zero()
        }
    };
    if curve.is_closed() {
        return (0..n).map(turning).collect();
    }
    let mut k = vec![T::zero(); n];
    if n < 3 {
        return k;
    }
    for (i, ki) in k.iter_mut().enumerate().take(n - 1).skip(1) {
        *ki = turning(i);
    }
    if n < 4 {
        k[0] = k[1];
        k[n - 1] = k[n - 2];
        return k;
    }
    let mut s = vec![T::zero(); n];
    for i in 1..n {
        s[i] = s[i - 1] + chords[i - 1];
    }
    let w = fd_weights(s[0], &s[1..4], 0);
    k[0] = w[0] * k[1] + w[1] * k[2] + w[2] * k[3];
    let w = fd_weights(s[n - 1], &[s[n - 2], s[n - 3], s[n - 4]], 0);
    k[n - 1] = w[0] * k[n - 2] + w[1] * k[n - 3] + w[2] * k[n - 4];
    k
}

/// Frame, curvature and its first two arc-length derivatives at every node.
///
/// Curvature is the turning angle at each node over the mean adjacent chord;
/// `kappa_s` and `kappa_ss` apply the second-order nonuniform first- and
/// second-derivative stencils (in arc length) to that field. Errors are
/// O(h²) in the mean spacing `h`.
pub fn curve_fields<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<CurveFields<T>> {
    let n = curve.len();
    if n < SMOOTH_MIN_NODES {
        return Err(Error::TooFewNodes { required: SMOOTH_MIN_NODES, got: n });
    }
    let chords = curve.check_regular()?;
    let kappa = node_curvatures(curve, &chords);
    let arcs = segment_arcs(curve, &chords);
    let closed = curve.is_closed();

    let mut s = vec![T::zero(); n];
    for i in 1..n {
        s[i] = s[i - 1] + arcs[i - 1];
    }
    let half = T::of(0.5);
    let dl: Vec<T> = (0..n)
        .map(|i| {
            let before = if closed || i > 0 { arcs[(i + n - 1) % n] } else { T::zero() };
            let after = if closed || i + 1 < n { arcs[i] } else { T::zero() };
            (before + after) * half
        })
        .collect();

    let d1 = stencils(closed, &arcs, &s, 1);
    let d2 = stencils(closed, &arcs, &s, 2);
    let tangent: Vec<Vec2<T>> = d1.iter().map(|st| st.apply(curve.nodes()).normalized()).collect();
    let normal = tangent.iter().map(|t| t.perp()).collect();
    let kappa_s = d1.iter().map(|st| st.apply(&kappa)).collect();
    let kappa_ss = d2.iter().map(|st| st.apply(&kappa)).collect();

    Ok(CurveFields { tangent, normal, kappa, kappa_s, kappa_ss, dl, s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn circle(n: usize) -> DiscreteCurve<f64> {
        DiscreteCurve::closed(
            (0..n)
                .map(|i| {
                    let u = TAU * i as f64 / n as f64;
                    Vec2::new(u.cos(), u.sin())
                })
                .collect(),
        )
    }

    #[test]
    fn fornberg_central_weights() {
        let w = fd_weights(0.0, &[-1.0, 0.0, 1.0], 1);
        assert_eq!(w, vec![-0.5, 0.0, 0.5]);
        let w = fd_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert_eq!(w, vec![1.0, -2.0, 1.0]);
        let w = fd_weights(0.0, &[0.0, 1.0, 2.0], 1);
        assert_eq!(w, vec![-1.5, 2.0, -0.5]);
        let w = fd_weights(0.0, &[0.0, 1.0, 2.0, 3.0], 2);
        for (a, b) in w.iter().zip([2.0f64, -5.0, 4.0, -1.0]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn unit_circle_fields() {
        let f = curve_fields(&circle(256)).unwrap();
        for i in 0..256 {
            // turning angle 2π/N over chord 2 sin(π/N)
            let x = std::f64::consts::PI / 256.0;
            assert!((f.kappa[i] - x / x.sin()).abs() < 1e-12);
            assert!(f.kappa_s[i].abs() < 1e-9);
            assert!(f.kappa_ss[i].abs() < 1e-6);
            assert!((f.tangent[i].norm() - 1.0).abs() < 1e-12);
            assert!(f.tangent[i].dot(f.normal[i]).abs() < 1e-12);
            assert_eq!(f.normal[i], f.tangent[i].perp());
        }
        // inward normal at node 0
        assert!((f.normal[0].x + 1.0).abs() < 1e-12);
    }

    #[test]
    fn dl_sums_to_length() {
        let c = circle(64).map(|p| Vec2::new(p.x * 2.0, p.y * 0.7));
        let f = curve_fields(&c).unwrap();
        let l = super::super::length(&c).unwrap();
        assert!((f.length() - l).abs() < 1e-13);
    }

    #[test]
    fn too_few_nodes() {
        assert_eq!(curve_fields(&circle(7)), Err(Error::TooFewNodes { required: 8, got: 7 }));
    }

    #[test]
    fn open_parabola_curvature() {
        // y = x², κ(x) = 2 / (1 + 4x²)^{3/2}
        let n = 201;
        let nodes = (0..n).map(|i| {
            let x = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            Vec2::new(x, x * x)
        });
        let c = DiscreteCurve::open(nodes.collect());
        let f = curve_fields(&c).unwrap();
        for (i, p) in c.nodes().iter().enumerate() {
            let exact = 2.0 / (1.0 + 4.0 * p.x * p.x).powf(1.5);
            assert!((f.kappa[i] - exact).abs() < 2e-3, "node {i}: {} vs {exact}", f.kappa[i]);
        }
    }
}
