//! Exact curves: circles, the shrinking lemniscate, the modified-Fresnel
//! stationary family and straight lines, plus the special functions they need.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::DiscreteCurve;
use crate::quadrature::adaptive_simpson;
use crate::scalar::Scalar;
use crate::vec2::Vec2;

/// Closed-form point and fields of the lemniscate
/// `ρ (cos u, ½ sin 2u) / (1 + sin² u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemniscatePoint<T> {
    pub point: Vec2<T>,
    pub tangent: Vec2<T>,
    pub normal: Vec2<T>,
    pub kappa: T,
    pub kappa_s: T,
    pub kappa_ss: T,
    /// ⟨γ, ν⟩
    pub gamma_dot_nu: T,
}

pub fn lemniscate_point<T: Scalar>(u: T, scale: T) -> LemniscatePoint<T> {
    let (s, c) = u.sin_cos();
    let one = T::one();
    let d = one + s * s; // = 2 - cos²u
    let sqrt_d = d.sqrt();
    let d32 = d * sqrt_d;
    let (two, three, six) = (T::of(2.0), T::of(3.0), T::of(6.0));
    let point = Vec2::new(c, s * c) * (scale / d);
    let tangent = Vec2::new(-(two + c * c) * s, three * c * c - two) * d32.recip();
    let r2 = scale * scale;
    LemniscatePoint {
        point,
        tangent,
        normal: tangent.perp(),
        kappa: three * c / sqrt_d / scale,
        kappa_s: -six * s / d / r2,
        kappa_ss: -six * c * c * c / d32 / (r2 * scale),
        gamma_dot_nu: scale * c * (s * s - one) / d32,
    }
}

/// Member of the stationary family: the arc-length parametrized curve with
/// curvature `2 c2 s + c1`, rotated by `theta` and translated.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub struct FresnelFamily<T> {
    pub c1: T,
    pub c2: T,
    #[serde(default)]
    pub theta: T,
    #[serde(default)]
    pub translation: Vec2<T>,
}

/// Modified Fresnel integrals `(∫₀ˢ cos(c1 t + c2 t²) dt, ∫₀ˢ sin(c1 t + c2 t²) dt)`.
pub fn modified_fresnel<T: Scalar>(s: T, c1: T, c2: T) -> Result<Vec2<T>> {
    let tol = T::quad_tol();
    let phase = |t: T| c1 * t + c2 * t * t;
    let cx = adaptive_simpson(|t| phase(t).cos(), T::zero(), s, tol)?;
    let cy = adaptive_simpson(|t| phase(t).sin(), T::zero(), s, tol)?;
    Ok(Vec2::new(cx, cy))
}

pub fn fresnel_point<T: Scalar>(s: T, family: &FresnelFamily<T>) -> Result<Vec2<T>> {
    if !s.is_finite() {
        return Err(Error::DomainError(format!("arc length {s} is not finite")));
    }
    Ok(modified_fresnel(s, family.c1, family.c2)?.rotated(family.theta) + family.translation)
}

/// Complete elliptic integral of the first kind, parameter `m = k²`.
///
/// AGM for `0 <= m < 1`, adaptive quadrature of the defining integral for `m < 0`.
pub fn elliptic_k<T: Scalar>(m: T) -> Result<T> {
    if !(m < T::one()) {
        return Err(Error::DomainError(format!("elliptic K needs m < 1, got {m}")));
    }
    if m >= T::zero() {
        elliptic_k_agm(m)
    } else {
        elliptic_k_quadrature(m)
    }
}

/// `π / (2 AGM(1, √(1 − m)))`, valid for every `m < 1`.
pub fn elliptic_k_agm<T: Scalar>(m: T) -> Result<T> {
    if !(m < T::one()) {
        return Err(Error::DomainError(format!("elliptic K needs m < 1, got {m}")));
    }
    let mut a = T::one();
    let mut b = (T::one() - m).sqrt();
    let tol = T::epsilon() * T::of(4.0);
    for _ in 0..64 {
        if (a - b).abs() <= tol * a {
            break;
        }
        let next = (a + b) * T::of(0.5);
        b = (a * b).sqrt();
        a = next;
    }
    Ok(T::FRAC_PI_2() / a)
}

/// `∫₀^{π/2} (1 − m sin²θ)^{−1/2} dθ` by adaptive Simpson.
pub fn elliptic_k_quadrature<T: Scalar>(m: T) -> Result<T> {
    if !(m < T::one()) {
        return Err(Error::DomainError(format!("elliptic K needs m < 1, got {m}")));
    }
    adaptive_simpson(
        |t: T| {
            let s = t.sin();
            (T::one() - m * s * s).sqrt().recip()
        },
        T::zero(),
        T::FRAC_PI_2(),
        T::quad_tol(),
    )
}

/// Which exact curve to generate. Serialized with a `kind` discriminator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub enum CurveKind<T> {
    Circle {
        radius: T,
        #[serde(default)]
        center: Vec2<T>,
    },
    Lemniscate {
        scale: T,
    },
    Fresnel {
        #[serde(flatten)]
        family: FresnelFamily<T>,
        s_min: T,
        s_max: T,
    },
    Line {
        point: Vec2<T>,
        direction: Vec2<T>,
        s_min: T,
        s_max: T,
    },
}

fn default_orientation() -> i8 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de> + Default"))]
pub struct AnalyticCurveSpec<T> {
    #[serde(flatten)]
    pub kind: CurveKind<T>,
    /// +1 keeps the natural parameter direction, −1 reverses node order.
    #[serde(default = "default_orientation")]
    pub orientation: i8,
}

impl<T: Scalar> AnalyticCurveSpec<T> {
    pub fn new(kind: CurveKind<T>) -> Self {
        Self { kind, orientation: 1 }
    }

    pub fn circle(radius: T) -> Self {
        Self::new(CurveKind::Circle { radius, center: Vec2::zero() })
    }

    pub fn lemniscate(scale: T) -> Self {
        Self::new(CurveKind::Lemniscate { scale })
    }

    pub fn fresnel(c1: T, c2: T, s_min: T, s_max: T) -> Self {
        Self::new(CurveKind::Fresnel { family: FresnelFamily { c1, c2, ..Default::default() }, s_min, s_max })
    }

    pub fn reversed(mut self) -> Self {
        self.orientation = -self.orientation;
        self
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.kind, CurveKind::Circle { .. } | CurveKind::Lemniscate { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::DomainError(m.to_string()));
        if self.orientation != 1 && self.orientation != -1 {
            return bad("orientation must be +1 or -1");
        }
        let finite = |xs: &[T]| xs.iter().all(|x| x.is_finite());
        match &self.kind {
            CurveKind::Circle { radius, center } => {
                if !finite(&[*radius, center.x, center.y]) || *radius <= T::zero() {
                    return bad("circle radius must be positive and finite");
                }
            }
            CurveKind::Lemniscate { scale } => {
                if !scale.is_finite() || *scale <= T::zero() {
                    return bad("lemniscate scale must be positive and finite");
                }
            }
            CurveKind::Fresnel { family: f, s_min, s_max } => {
                if !finite(&[f.c1, f.c2, f.theta, f.translation.x, f.translation.y, *s_min, *s_max]) {
                    return bad("fresnel parameters must be finite");
                }
                if !(s_min < s_max) {
                    return bad("need s_min < s_max");
                }
            }
            CurveKind::Line { point, direction, s_min, s_max } => {
                if !finite(&[point.x, point.y, direction.x, direction.y, *s_min, *s_max]) {
                    return bad("line parameters must be finite");
                }
                if direction.norm() == T::zero() {
                    return bad("line direction must be nonzero");
                }
                if !(s_min < s_max) {
                    return bad("need s_min < s_max");
                }
            }
        }
        Ok(())
    }
}

/// Samples the curve at `n` uniform parameter values: `[0, 2π)` for closed
/// kinds, `[s_min, s_max]` inclusive for open kinds.
pub fn sample_analytic<T: Scalar>(spec: &AnalyticCurveSpec<T>, n: usize) -> Result<DiscreteCurve<T>> {
    spec.validate()?;
    let closed = spec.is_closed();
    let required = if closed { 3 } else { 2 };
    if n < required {
        return Err(Error::TooFewNodes { required, got: n });
    }
    let closed_param = |i: usize| T::TAU() * T::of_usize(i) / T::of_usize(n);
    let open_param = |i: usize, a: T, b: T| {
        if i + 1 == n {
            b
        } else {
            a + (b - a) * T::of_usize(i) / T::of_usize(n - 1)
        }
    };
    let nodes: Vec<Vec2<T>> = match &spec.kind {
        CurveKind::Circle { radius, center } => (0..n)
            .map(|i| {
                let (s, c) = closed_param(i).sin_cos();
                *center + Vec2::new(c, s) * *radius
            })
            .collect(),
        CurveKind::Lemniscate { scale } => (0..n).map(|i| lemniscate_point(closed_param(i), *scale).point).collect(),
        CurveKind::Fresnel { family, s_min, s_max } => {
            (0..n).map(|i| fresnel_point(open_param(i, *s_min, *s_max), family)).collect::<Result<_>>()?
        }
        CurveKind::Line { point, direction, s_min, s_max } => {
            let d = direction.normalized();
            (0..n).map(|i| *point + d * open_param(i, *s_min, *s_max)).collect()
        }
    };
    let curve = DiscreteCurve::new(nodes, closed);
    Ok(if spec.orientation < 0 { curve.reversed() } else { curve })
}
