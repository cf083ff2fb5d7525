use super::spline::CubicSpline;
use super::DiscreteCurve;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

const MAX_SWEEPS: usize = 60;

/// Redistributes the curve onto `m` nodes with equal spacing along the curve.
///
/// The nodes are interpolated by a cubic spline in cumulative chord length
/// (periodic for closed curves, not-a-knot for open ones). Target parameters
/// are then corrected until consecutive output chords agree to roundoff.
/// Open curves keep both end nodes. A curve that is already uniformly spaced
/// maps to itself.
pub fn resample_uniform<T: Scalar>(curve: &DiscreteCurve<T>, m: usize) -> Result<DiscreteCurve<T>> {
    if m < super::SMOOTH_MIN_NODES {
        return Err(Error::TooFewNodes { required: super::SMOOTH_MIN_NODES, got: m });
    }
    let n = curve.len();
    let min_in = if curve.is_closed() { 3 } else { 2 };
    if n < min_in {
        return Err(Error::TooFewNodes { required: min_in, got: n });
    }
    let chords = curve.check_regular()?;
    let mut knots = Vec::with_capacity(n);
    let mut acc = T::zero();
    knots.push(acc);
    for c in &chords[..n - 1] {
        acc = acc + *c;
        knots.push(acc);
    }
    let closed = curve.is_closed();
    let spline = if closed {
        CubicSpline::periodic(knots, curve.nodes().to_vec(), acc + chords[n - 1])?
    } else {
        CubicSpline::open(knots, curve.nodes().to_vec())?
    };
    let total = spline.end();

    // parameters t_0..t_{m-1} (plus the closing t_m = total for closed curves)
    let count = if closed { m + 1 } else { m };
    let steps = T::of_usize(count - 1);
    let mut t: Vec<T> = (0..count).map(|j| total * T::of_usize(j) / steps).collect();
    let tol = T::epsilon() * T::of(64.0);
    let mut pts: Vec<Vec2<T>> = Vec::new();
    for _ in 0..MAX_SWEEPS {
        pts = t.iter().map(|&x| spline.eval(x)).collect();
        if closed {
            pts[m] = pts[0];
        }
        let mut cum = Vec::with_capacity(count);
        cum.push(T::zero());
        for w in pts.windows(2) {
            let last = *cum.last().unwrap();
            cum.push(last + (w[1] - w[0]).norm());
        }
        let len = cum[count - 1];
        let h = len / steps;
        let worst = cum.windows(2).map(|w| ((w[1] - w[0]) - h).abs()).fold(T::zero(), T::max);
        if worst <= tol * h {
            break;
        }
        // invert the piecewise-linear map t -> cumulative chord
        let mut next = Vec::with_capacity(count);
        let mut k = 0;
        for j in 0..count {
            let target = h * T::of_usize(j);
            while k + 2 < count && cum[k + 1] < target {
                k += 1;
            }
            let span = cum[k + 1] - cum[k];
            let frac = if span > T::zero() { (target - cum[k]) / span } else { T::zero() };
            next.push(t[k] + (t[k + 1] - t[k]) * frac);
        }
        next[0] = T::zero();
        next[count - 1] = total;
        t = next;
    }
    pts.truncate(m);
    Ok(DiscreteCurve::new(pts, closed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn clustered_circle_becomes_uniform() {
        let n = 256;
        let nodes = (0..n)
            .map(|i| {
                let x = i as f64 / n as f64;
                let u = TAU * x * x;
                Vec2::new(u.cos(), u.sin())
            })
            .collect();
        let r = resample_uniform(&DiscreteCurve::closed(nodes), 256).unwrap();
        let c = r.chord_lengths();
        let mean = c.iter().sum::<f64>() / c.len() as f64;
        for x in c {
            assert!((x - mean).abs() / mean < 1e-6);
        }
    }

    #[test]
    fn open_segment_stays_collinear() {
        let nodes: Vec<_> = (0..9)
            .map(|i| {
                let t = (i as f64 / 8.0).powi(2);
                Vec2::new(1.0 + 2.0 * t, -0.5 + 3.0 * t)
            })
            .collect();
        let r = resample_uniform(&DiscreteCurve::open(nodes), 17).unwrap();
        assert_eq!(r.len(), 17);
        let d = Vec2::new(2.0, 3.0).normalized();
        for p in r.nodes() {
            assert!((*p - Vec2::new(1.0, -0.5)).cross(d).abs() < 1e-12);
        }
        assert_eq!(r.nodes()[0], Vec2::new(1.0, -0.5));
    }

    #[test]
    fn idempotent_on_uniform_input() {
        let n = 64;
        let nodes = (0..n)
            .map(|i| {
                let u = TAU * i as f64 / n as f64;
                Vec2::new(2.0 * u.cos(), 2.0 * u.sin())
            })
            .collect();
        let c = DiscreteCurve::closed(nodes);
        let r = resample_uniform(&c, n).unwrap();
        for (a, b) in c.nodes().iter().zip(r.nodes()) {
            assert!((*a - *b).norm() < 1e-10);
        }
    }

    #[test]
    fn rejects_small_targets() {
        let c = DiscreteCurve::open(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0)]);
        assert_eq!(resample_uniform(&c, 4), Err(Error::TooFewNodes { required: 8, got: 4 }));
    }
}
