//! Interpolating cubic splines of planar points against a scalar parameter.

use crate::banded::{BandedMatrix, CyclicBandedMatrix};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::vec2::Vec2;

pub(crate) struct CubicSpline<T> {
    knots: Vec<T>,
    values: Vec<Vec2<T>>,
    // second derivatives at the knots
    m: Vec<Vec2<T>>,
    period: Option<T>,
}

fn solve_xy<T: Scalar>(solve: impl Fn(&mut [T]), rhs: &[Vec2<T>]) -> Vec<Vec2<T>> {
    let mut x: Vec<T> = rhs.iter().map(|v| v.x).collect();
    let mut y: Vec<T> = rhs.iter().map(|v| v.y).collect();
    solve(&mut x);
    solve(&mut y);
    x.into_iter().zip(y).map(|(x, y)| Vec2::new(x, y)).collect()
}

impl<T: Scalar> CubicSpline<T> {
    /// Periodic spline; `knots` strictly increasing, the point after the last
    /// knot is `values[0]` at parameter `knots[0] + period`.
    pub(crate) fn periodic(knots: Vec<T>, values: Vec<Vec2<T>>, period: T) -> Result<Self> {
        let n = knots.len();
        let h: Vec<T> =
            (0..n).map(|i| if i + 1 < n { knots[i + 1] - knots[i] } else { knots[0] + period - knots[i] }).collect();
        let six = T::of(6.0);
        let two = T::of(2.0);
        let mut a = CyclicBandedMatrix::zeros(n, 1, 1);
        let mut rhs = Vec::with_capacity(n);
        for i in 0..n {
            let prev = (i + n - 1) % n;
            a.set_offset(i, -1, h[prev]);
            a.set_offset(i, 0, two * (h[prev] + h[i]));
            a.set_offset(i, 1, h[i]);
            let fwd = (values[(i + 1) % n] - values[i]) * h[i].recip();
            let bwd = (values[i] - values[prev]) * h[prev].recip();
            rhs.push((fwd - bwd) * six);
        }
        let lu = a.factor()?;
        let m = solve_xy(|v| lu.solve_in_place(v), &rhs);
        Ok(Self { knots, values, m, period: Some(period) })
    }

    /// Not-a-knot spline (natural for three points, linear for two).
    pub(crate) fn open(knots: Vec<T>, values: Vec<Vec2<T>>) -> Result<Self> {
        let n = knots.len();
        let h: Vec<T> = knots.windows(2).map(|w| w[1] - w[0]).collect();
        let six = T::of(6.0);
        let two = T::of(2.0);
        let mut a = BandedMatrix::zeros(n, 2, 2);
        let mut rhs = vec![Vec2::zero(); n];
        for i in 1..n.saturating_sub(1) {
            a.set(i, i - 1, h[i - 1]);
            a.set(i, i, two * (h[i - 1] + h[i]));
            a.set(i, i + 1, h[i]);
            let fwd = (values[i + 1] - values[i]) * h[i].recip();
            let bwd = (values[i] - values[i - 1]) * h[i - 1].recip();
            rhs[i] = (fwd - bwd) * six;
        }
        if n >= 4 {
            a.set(0, 0, h[1]);
            a.set(0, 1, -(h[0] + h[1]));
            a.set(0, 2, h[0]);
            let k = n - 1;
            a.set(k, k - 2, h[k - 1]);
            a.set(k, k - 1, -(h[k - 2] + h[k - 1]));
            a.set(k, k, h[k - 2]);
        } else {
            a.set(0, 0, T::one());
            a.set(n - 1, n - 1, T::one());
        }
        let lu = a.factor()?;
        let m = solve_xy(|v| lu.solve_in_place(v), &rhs);
        Ok(Self { knots, values, m, period: None })
    }

    pub(crate) fn end(&self) -> T {
        match self.period {
            Some(p) => self.knots[0] + p,
            None => *self.knots.last().unwrap(),
        }
    }

    pub(crate) fn eval(&self, t: T) -> Vec2<T> {
        let n = self.knots.len();
        let segments = if self.period.is_some() { n } else { n - 1 };
        // last knot not exceeding t, clamped to a valid segment
        let i = match self.knots.binary_search_by(|k| k.partial_cmp(&t).unwrap()) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        }
        .min(segments - 1);
        let j = (i + 1) % n;
        let t0 = self.knots[i];
        let t1 = if j == 0 { self.end() } else { self.knots[j] };
        let h = t1 - t0;
        let a = (t1 - t) / h;
        let b = (t - t0) / h;
        let h2 = h * h / T::of(6.0);
        self.values[i] * a
            + self.values[j] * b
            + self.m[i] * ((a * a * a - a) * h2)
            + self.m[j] * ((b * b * b - b) * h2)
    }
}
