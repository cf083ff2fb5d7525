//! Least-squares fits of the soliton equations to a sampled curve.
//!
//! Each fit minimizes an arc-length weighted L² defect. Residuals are the
//! defect norm divided by `max(‖κ_ss‖, 1e-3 ‖κ³‖)`, or by `‖κ‖` for the
//! stationary fit, so they are scale free. The floor keeps samples of
//! constant-curvature curves, whose `κ_ss` is pure roundoff, from producing
//! meaningless ratios.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{curve_fields, CurveFields, DiscreteCurve};
use crate::scalar::Scalar;
use crate::vec2::Vec2;

pub const DEFAULT_TOL: f64 = 1e-2;
/// Relative threshold, against `L³`, below which a fit denominator counts as zero.
pub const DEGENERACY: f64 = 1e-12;
pub const MAX_CONDITION: f64 = 1e12;
const FLOOR: f64 = 1e-3;

fn six_digits<T: Scalar, S: Serializer>(r: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    let v = r.as_f64();
    if v.is_finite() {
        s.serialize_f64(format!("{v:.5e}").parse().expect("formatted float parses"))
    } else {
        s.serialize_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryFit<T: Scalar> {
    /// Curvature at the arc-length midpoint.
    pub k1: T,
    /// Slope of curvature in arc length.
    pub k2: T,
    #[serde(serialize_with = "six_digits")]
    pub residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShrinkerFit<T: Scalar> {
    #[serde(rename = "K")]
    pub k: T,
    #[serde(serialize_with = "six_digits")]
    pub residual: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslatorFit<T: Scalar> {
    #[serde(rename = "V")]
    pub v: Vec2<T>,
    #[serde(serialize_with = "six_digits")]
    pub residual: T,
    /// Set when all normals are (nearly) parallel; `v` is then only
    /// determined along the dominant normal direction.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RotationSpeed<T> {
    Value(T),
    Indeterminate(IndeterminateTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndeterminateTag {
    Indeterminate,
}

impl<T: Copy> RotationSpeed<T> {
    pub const INDETERMINATE: Self = RotationSpeed::Indeterminate(IndeterminateTag::Indeterminate);

    pub fn value(&self) -> Option<T> {
        match *self {
            RotationSpeed::Value(s) => Some(s),
            RotationSpeed::Indeterminate(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotatorFit<T: Scalar> {
    #[serde(rename = "S")]
    pub s: RotationSpeed<T>,
    #[serde(serialize_with = "six_digits")]
    pub residual: T,
}

fn ratio<T: Scalar>(num: T, den: T) -> T {
    if den > T::zero() {
        num / den
    } else if num == T::zero() {
        T::zero()
    } else {
        T::infinity()
    }
}

fn dot<T: Scalar>(f: &CurveFields<T>, a: &[T], b: &[T]) -> T {
    f.dl.iter().zip(a).zip(b).map(|((&w, &x), &y)| w * x * y).sum()
}

fn kss_scale<T: Scalar>(f: &CurveFields<T>) -> T {
    let kss = f.l2(|i| f.kappa_ss[i]);
    let cubic = f.l2(|i| f.kappa[i].powi(3));
    kss.max(T::of(FLOOR) * cubic)
}

fn kss_residual<T: Scalar>(f: &CurveFields<T>, defect: impl Fn(usize) -> T) -> T {
    ratio(f.l2(defect), kss_scale(f))
}

/// Weighted regression `κ ≈ k1 + k2 (s − s_mid)`.
pub fn fit_stationary<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<StationaryFit<T>> {
    Ok(stationary_from_fields(&curve_fields(curve)?))
}

pub fn stationary_from_fields<T: Scalar>(f: &CurveFields<T>) -> StationaryFit<T> {
    let total = f.length();
    let mid = if f.s.len() > 1 { f.s[f.s.len() - 1] * T::of(0.5) } else { T::zero() };
    let x: Vec<T> = f.s.iter().map(|&s| s - mid).collect();
    let ones = vec![T::one(); x.len()];
    let mean_x = dot(f, &x, &ones) / total;
    let mean_k = dot(f, &f.kappa, &ones) / total;
    let xc: Vec<T> = x.iter().map(|&v| v - mean_x).collect();
    let sxx = dot(f, &xc, &xc);
    let k2 = if sxx > T::zero() { dot(f, &xc, &f.kappa) / sxx } else { T::zero() };
    let k1 = mean_k - k2 * mean_x;
    let defect = f.l2(|i| f.kappa[i] - k1 - k2 * x[i]);
    StationaryFit { k1, k2, residual: ratio(defect, f.l2(|i| f.kappa[i])) }
}

/// Least squares for `κ_ss + K ⟨γ − c, ν⟩ = 0` over `K` and the centre `c`,
/// which makes `K` independent of where the curve sits in the plane.
pub fn fit_shrinker<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<ShrinkerFit<T>> {
    shrinker_from_fields(curve, &curve_fields(curve)?)
}

pub fn shrinker_from_fields<T: Scalar>(curve: &DiscreteCurve<T>, f: &CurveFields<T>) -> Result<ShrinkerFit<T>> {
    let support: Vec<T> = curve.nodes().iter().zip(&f.normal).map(|(p, n)| p.dot(*n)).collect();
    let nx: Vec<T> = f.normal.iter().map(|n| n.x).collect();
    let ny: Vec<T> = f.normal.iter().map(|n| n.y).collect();

    // orthonormal basis of span{ν_x, ν_y}
    let mut basis: Vec<Vec<T>> = Vec::new();
    let tiny = T::of(DEGENERACY) * f.length();
    for col in [nx, ny] {
        let mut c = col;
        for b in &basis {
            let p = dot(f, &c, b);
            c.iter_mut().zip(b).for_each(|(ci, &bi)| *ci = *ci - p * bi);
        }
        let norm = dot(f, &c, &c).sqrt();
        if norm * norm > tiny {
            basis.push(c.into_iter().map(|v| v / norm).collect());
        }
    }
    let project = |v: &[T]| {
        let mut out = v.to_vec();
        for b in &basis {
            let p = dot(f, &out, b);
            out.iter_mut().zip(b).for_each(|(o, &bi)| *o = *o - p * bi);
        }
        out
    };
    let a = project(&support);
    let k_ss = project(&f.kappa_ss);
    let denom = dot(f, &a, &a);
    if denom <= T::of(DEGENERACY) * f.length().powi(3) {
        return Err(Error::DegenerateGeometry("support function is explained by a translation".into()));
    }
    let k = -dot(f, &k_ss, &a) / denom;
    let residual = kss_residual(f, |i| k_ss[i] + k * a[i]);
    Ok(ShrinkerFit { k, residual })
}

/// Least squares for `κ_ss + ⟨V, ν⟩ = 0`.
pub fn fit_translator<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<TranslatorFit<T>> {
    translator_from_fields(&curve_fields(curve)?)
}

pub fn translator_from_fields<T: Scalar>(f: &CurveFields<T>) -> Result<TranslatorFit<T>> {
    let (mut mxx, mut mxy, mut myy) = (T::zero(), T::zero(), T::zero());
    let mut rhs = Vec2::zero();
    for ((n, &w), &kss) in f.normal.iter().zip(&f.dl).zip(&f.kappa_ss) {
        mxx = mxx + n.x * n.x * w;
        mxy = mxy + n.x * n.y * w;
        myy = myy + n.y * n.y * w;
        rhs += *n * (-kss * w);
    }
    let half_tr = (mxx + myy) * T::of(0.5);
    let disc = (((mxx - myy) * T::of(0.5)).powi(2) + mxy * mxy).sqrt();
    let (hi, lo) = (half_tr + disc, half_tr - disc);
    if !(hi > T::zero()) {
        return Err(Error::DegenerateGeometry("normal matrix vanishes".into()));
    }
    let (v, degenerate) = if lo > hi / T::of(MAX_CONDITION) {
        let det = mxx * myy - mxy * mxy;
        (Vec2::new(myy * rhs.x - mxy * rhs.y, mxx * rhs.y - mxy * rhs.x) * det.recip(), false)
    } else {
        // eigenvector of the large eigenvalue
        let e = if mxy.abs() > T::zero() {
            Vec2::new(mxy, hi - mxx).normalized()
        } else if mxx >= myy {
            Vec2::new(T::one(), T::zero())
        } else {
            Vec2::new(T::zero(), T::one())
        };
        (e * (rhs.dot(e) / hi), true)
    };
    let residual = kss_residual(f, |i| f.kappa_ss[i] + v.dot(f.normal[i]));
    Ok(TranslatorFit { v, residual, degenerate })
}

/// Least squares for `κ_ss + 2S ⟨γ_s, γ⟩ = 0` with rotation about the origin.
pub fn fit_rotator<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<RotatorFit<T>> {
    Ok(rotator_from_fields(curve, &curve_fields(curve)?))
}

pub fn rotator_from_fields<T: Scalar>(curve: &DiscreteCurve<T>, f: &CurveFields<T>) -> RotatorFit<T> {
    let a: Vec<T> = curve.nodes().iter().zip(&f.tangent).map(|(p, t)| T::of(2.0) * t.dot(*p)).collect();
    let denom = dot(f, &a, &a);
    if denom < T::of(DEGENERACY) * f.length().powi(3) {
        return RotatorFit { s: RotationSpeed::INDETERMINATE, residual: kss_residual(f, |i| f.kappa_ss[i]) };
    }
    let s = -dot(f, &f.kappa_ss, &a) / denom;
    RotatorFit { s: RotationSpeed::Value(s), residual: kss_residual(f, |i| f.kappa_ss[i] + s * a[i]) }
}

/// A fit result, or the reason it could not be computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Fit<F> {
    Ok(F),
    Unavailable { unavailable: String },
}

impl<F> Fit<F> {
    fn from(r: Result<F>) -> Self {
        match r {
            Ok(f) => Fit::Ok(f),
            Err(e) => Fit::Unavailable { unavailable: e.to_string() },
        }
    }

    pub fn ok(&self) -> Option<&F> {
        match self {
            Fit::Ok(f) => Some(f),
            Fit::Unavailable { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Stationary,
    Shrinker,
    Expander,
    Translator,
    Rotator,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolitonReport<T: Scalar> {
    pub stationary: Fit<StationaryFit<T>>,
    pub shrinker: Fit<ShrinkerFit<T>>,
    pub translator: Fit<TranslatorFit<T>>,
    pub rotator: Fit<RotatorFit<T>>,
    pub verdict: Verdict,
}

impl<T: Scalar> SolitonReport<T> {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs all four fits and picks the class with the smallest residual below
/// `tol`; exact ties go to stationary, then shrinker, translator, rotator.
pub fn classify<T: Scalar>(curve: &DiscreteCurve<T>, tol: T) -> SolitonReport<T> {
    let (stationary, shrinker, translator, rotator) = match curve_fields(curve) {
        Ok(f) => (
            Fit::Ok(stationary_from_fields(&f)),
            Fit::from(shrinker_from_fields(curve, &f)),
            Fit::from(translator_from_fields(&f)),
            Fit::Ok(rotator_from_fields(curve, &f)),
        ),
        Err(e) => {
            let msg = e.to_string();
            (
                Fit::Unavailable { unavailable: msg.clone() },
                Fit::Unavailable { unavailable: msg.clone() },
                Fit::Unavailable { unavailable: msg.clone() },
                Fit::Unavailable { unavailable: msg },
            )
        }
    };
    let shrink_class =
        if shrinker.ok().is_some_and(|f| f.k > T::zero()) { Verdict::Expander } else { Verdict::Shrinker };
    let verdict = pick_verdict(
        &[
            (Verdict::Stationary, stationary.ok().map(|f| f.residual)),
            (shrink_class, shrinker.ok().map(|f| f.residual)),
            (Verdict::Translator, translator.ok().map(|f| f.residual)),
            (Verdict::Rotator, rotator.ok().map(|f| f.residual)),
        ],
        tol,
    );
    SolitonReport { stationary, shrinker, translator, rotator, verdict }
}

/// Candidates are in priority order, so a strict comparison keeps the
/// earlier class on ties.
fn pick_verdict<T: Scalar>(candidates: &[(Verdict, Option<T>)], tol: T) -> Verdict {
    let mut verdict = Verdict::None;
    let mut best = tol;
    for &(v, r) in candidates {
        if let Some(r) = r.filter(|&r| r < best) {
            verdict = v;
            best = r;
        }
    }
    verdict
}

/// A discrete identity's defect together with the size of its terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityDefect<T> {
    pub defect: T,
    pub scale: T,
}

impl<T: Scalar> IdentityDefect<T> {
    pub fn relative(&self) -> T {
        ratio(self.defect.abs(), self.scale)
    }
}

/// `∫ κ_s² dℓ + ∫ κ κ_ss dℓ`, which integrates by parts to zero on closed curves.
pub fn energy_identity<T: Scalar>(f: &CurveFields<T>) -> IdentityDefect<T> {
    let ks2 = f.integrate(|i| f.kappa_s[i] * f.kappa_s[i]);
    let kkss = f.integrate(|i| f.kappa[i] * f.kappa_ss[i]);
    // same dimensions as the terms; keeps constant-curvature samples from dividing roundoff by roundoff
    let floor = T::of(FLOOR * FLOOR) * f.integrate(|i| f.kappa[i].powi(4));
    IdentityDefect { defect: ks2 + kkss, scale: ks2.max(kkss.abs()).max(floor) }
}

/// `∫ ⟨V, κ ν⟩ dℓ` for the given `V`; vanishes on closed curves since `κ ν = ∂_s γ_s`.
pub fn curvature_vector_moment<T: Scalar>(f: &CurveFields<T>, v: Vec2<T>) -> IdentityDefect<T> {
    let defect = f.integrate(|i| f.kappa[i] * v.dot(f.normal[i]));
    IdentityDefect { defect, scale: v.norm() * f.integrate(|i| f.kappa[i].abs()) }
}

/// `∫ ⟨ν_s, γ⟩ dℓ + ∫ ⟨ν, γ_s⟩ dℓ = ∫ ∂_s ⟨ν, γ⟩ dℓ`, zero on closed curves.
pub fn rotator_identity<T: Scalar>(curve: &DiscreteCurve<T>, f: &CurveFields<T>) -> IdentityDefect<T> {
    let p = curve.nodes();
    // ν_s = −κ t
    let first = f.integrate(|i| -f.kappa[i] * f.tangent[i].dot(p[i]));
    let second = f.integrate(|i| f.normal[i].dot(f.tangent[i]));
    let scale = f.integrate(|i| (f.kappa[i] * p[i].norm()).abs());
    IdentityDefect { defect: first + second, scale }
}

/// On an open arc between nodes `p` and `q`:
/// `∫ κ_s² dℓ − [⟨V, γ_s⟩ + κ κ_s]_p^q`, which vanishes for translators.
pub fn translator_boundary_identity<T: Scalar>(
    f: &CurveFields<T>,
    v: Vec2<T>,
    p: usize,
    q: usize,
) -> IdentityDefect<T> {
    // trapezoid over the node window
    let mut integral = T::zero();
    for i in p..q {
        let h = f.s[i + 1] - f.s[i];
        integral = integral + (f.kappa_s[i].powi(2) + f.kappa_s[i + 1].powi(2)) * h * T::of(0.5);
    }
    let boundary = |i: usize| v.dot(f.tangent[i]) + f.kappa[i] * f.kappa_s[i];
    let bracket = boundary(q) - boundary(p);
    IdentityDefect { defect: integral - bracket, scale: integral.abs().max(bracket.abs()) }
}
