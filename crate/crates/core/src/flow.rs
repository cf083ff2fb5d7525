//! Time integration of curve diffusion and elastic flow.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::banded::{BandedMatrix, CyclicBandedMatrix};
use crate::error::{Error, Result};
use crate::geometry::io::write_csv;
use crate::geometry::{curve_fields, length, resample_uniform, CurveFields, DiscreteCurve};
use crate::monitor::MonitorSeries;
use crate::scalar::Scalar;

/// Explicit steps must satisfy `dt (N/L)⁴ <= EXPLICIT_LIMIT`.
pub const EXPLICIT_LIMIT: f64 = 0.125;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowKind {
    /// Normal speed `−κ_ss`.
    #[default]
    CurveDiffusion,
    /// Normal speed `−κ_ss − κ³/2`.
    Elastic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Explicit,
    #[default]
    SemiImplicit,
}

/// Either a fixed step or `"auto"`: `h⁴/10` explicit, `h²/4` semi-implicit,
/// with `h` the mean node spacing.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(untagged, bound(deserialize = "T: Deserialize<'de>"))]
pub enum TimeStep<T> {
    #[default]
    #[serde(with = "auto_tag")]
    Auto,
    Fixed(T),
}

mod auto_tag {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("auto")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "auto" {
            Ok(())
        } else {
            Err(de::Error::custom(format!("expected \"auto\" or a number, got {s:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct StopRule<T> {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_below: Option<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_spacing_below: Option<T>,
}

impl<T> Default for StopRule<T> {
    fn default() -> Self {
        Self { length_below: None, min_spacing_below: None }
    }
}

fn default_redistribute() -> usize {
    10
}

fn default_snapshot() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct FlowSpec<T> {
    #[serde(default)]
    pub kind: FlowKind,
    #[serde(default)]
    pub scheme: Scheme,
    #[serde(default)]
    pub dt: TimeStep<T>,
    pub t_end: T,
    /// Resample to equal spacing every this many steps; 0 disables.
    #[serde(default = "default_redistribute")]
    pub redistribute_every: usize,
    /// Record a snapshot every this many steps (the final state is always recorded).
    #[serde(default = "default_snapshot")]
    pub snapshot_every: usize,
    #[serde(default)]
    pub stop: StopRule<T>,
}

impl<T: Scalar> FlowSpec<T> {
    pub fn new(t_end: T) -> Self {
        Self {
            kind: FlowKind::CurveDiffusion,
            scheme: Scheme::SemiImplicit,
            dt: TimeStep::Auto,
            t_end,
            redistribute_every: default_redistribute(),
            snapshot_every: default_snapshot(),
            stop: StopRule::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidSpec(m));
        if !(self.t_end > T::zero()) || !self.t_end.is_finite() {
            return bad(format!("t_end must be positive and finite, got {}", self.t_end));
        }
        if let TimeStep::Fixed(dt) = self.dt {
            if !(dt > T::zero()) || !dt.is_finite() {
                return bad(format!("dt must be positive and finite, got {dt}"));
            }
        }
        if self.snapshot_every == 0 {
            return bad("snapshot_every must be at least 1".into());
        }
        for v in [self.stop.length_below, self.stop.min_spacing_below].into_iter().flatten() {
            if !v.is_finite() {
                return bad("stop thresholds must be finite".into());
            }
        }
        Ok(())
    }

    /// Fails with `StabilityViolation` when an explicit user step is outside
    /// the stability envelope for `curve`.
    pub fn check_stability(&self, curve: &DiscreteCurve<T>) -> Result<()> {
        if let (Scheme::Explicit, TimeStep::Fixed(dt)) = (self.scheme, self.dt) {
            let ratio = dt * (T::of_usize(curve.len()) / length(curve)?).powi(4);
            if ratio > T::of(EXPLICIT_LIMIT) {
                return Err(Error::StabilityViolation { dt: dt.as_f64(), ratio: ratio.as_f64() });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    TimeReached,
    LengthBelow,
    MinSpacingBelow,
    NonFinite,
    SolveFailure,
    /// The curve lost regularity (coincident nodes) during the run.
    NonRegular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub snapshots: Vec<DiscreteCurve<T>>,
    pub monitors: MonitorSeries<T>,
    pub termination: Termination,
    pub steps: usize,
}

impl<T: Scalar> Trajectory<T> {
    pub fn last(&self) -> &DiscreteCurve<T> {
        self.snapshots.last().expect("trajectory has at least one snapshot")
    }
}

/// Normal speed along `ν` at each node.
pub fn normal_velocity<T: Scalar>(fields: &CurveFields<T>, kind: FlowKind) -> Vec<T> {
    match kind {
        FlowKind::CurveDiffusion => fields.kappa_ss.iter().map(|&k| -k).collect(),
        FlowKind::Elastic => {
            fields.kappa_ss.iter().zip(&fields.kappa).map(|(&kss, &k)| -kss - T::of(0.5) * k * k * k).collect()
        }
    }
}

fn mean_spacing<T: Scalar>(curve: &DiscreteCurve<T>, l: T) -> T {
    l / T::of_usize(curve.segment_count())
}

/// Solves `(I + c D) w = rhs` where `D` is the fourth difference `δ⁴`
/// (closed) or `D2ᵀ D2` with one-sided end rows (open).
fn smooth<T: Scalar>(closed: bool, c: T, rhs: &[T]) -> Result<Vec<T>> {
    let n = rhs.len();
    if closed {
        let four = T::of(4.0);
        let stencil = [c, -four * c, T::one() + T::of(6.0) * c, -four * c, c];
        return CyclicBandedMatrix::circulant(n, 2, &stencil).solve(rhs);
    }
    let mut a = BandedMatrix::zeros(n, 3, 3);
    for i in 0..n {
        a.add(i, i, T::one());
    }
    let ends = [2.0, -5.0, 4.0, -1.0];
    let mut row = Vec::with_capacity(4);
    for k in 0..n {
        row.clear();
        if k == 0 {
            row.extend(ends.iter().enumerate().map(|(j, &w)| (j, T::of(w))));
        } else if k + 1 == n {
            row.extend(ends.iter().enumerate().map(|(j, &w)| (n - 1 - j, T::of(w))));
        } else {
            row.extend([(k - 1, T::one()), (k, T::of(-2.0)), (k + 1, T::one())]);
        }
        for &(j1, w1) in &row {
            for &(j2, w2) in &row {
                a.add(j1, j2, c * w1 * w2);
            }
        }
    }
    a.solve(rhs)
}

/// Advances the curve by one step of size `dt` along the normal.
///
/// The semi-implicit scheme treats the frozen-coefficient fourth difference
/// implicitly: the normal displacement `w` solves `(I + dt δ⁴/h⁴) w = dt v`.
pub fn step<T: Scalar>(curve: &DiscreteCurve<T>, dt: T, spec: &FlowSpec<T>) -> Result<DiscreteCurve<T>> {
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(Error::InvalidSpec(format!("dt must be positive and finite, got {dt}")));
    }
    let fields = curve_fields(curve)?;
    let v = normal_velocity(&fields, spec.kind);
    let w = match spec.scheme {
        Scheme::Explicit => v.iter().map(|&x| x * dt).collect(),
        Scheme::SemiImplicit => {
            let h = mean_spacing(curve, fields.length());
            let rhs: Vec<T> = v.iter().map(|&x| x * dt).collect();
            smooth(curve.is_closed(), dt / h.powi(4), &rhs)?
        }
    };
    let nodes = curve.nodes().iter().zip(&fields.normal).zip(&w).map(|((&p, &nu), &wi)| p + nu * wi).collect();
    let next = DiscreteCurve::new(nodes, curve.is_closed());
    if !next.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(next)
}

fn auto_dt<T: Scalar>(curve: &DiscreteCurve<T>, scheme: Scheme, redistributing: bool) -> Result<T> {
    // without redistribution nodes can cluster, so budget by the smallest gap
    let h = if redistributing { mean_spacing(curve, length(curve)?) } else { curve.min_spacing() };
    Ok(match scheme {
        Scheme::Explicit => h.powi(4) / T::of(10.0),
        Scheme::SemiImplicit => h * h / T::of(4.0),
    })
}

fn termination_of(e: &Error) -> Termination {
    match e {
        Error::NonFinite => Termination::NonFinite,
        Error::SolveFailure(_) => Termination::SolveFailure,
        _ => Termination::NonRegular,
    }
}

/// Integrates until `t_end` or the first stop rule fires.
///
/// Invalid input fails up front; breakdowns during the run end it with the
/// corresponding [`Termination`].
pub fn evolve<T: Scalar>(curve: &DiscreteCurve<T>, spec: &FlowSpec<T>) -> Result<Trajectory<T>> {
    spec.validate()?;
    curve_fields(curve)?;
    spec.check_stability(curve)?;
    let n = curve.len();
    let every = spec.redistribute_every;
    let redistributing = every > 0;

    let mut cur = if redistributing { resample_uniform(curve, n)? } else { curve.clone() };
    let mut traj = Trajectory {
        times: vec![T::zero()],
        snapshots: vec![cur.clone()],
        monitors: MonitorSeries::new(),
        termination: Termination::TimeReached,
        steps: 0,
    };
    traj.monitors.push(&cur, T::zero())?;

    let fixed = match spec.dt {
        TimeStep::Fixed(dt) => Some(dt),
        TimeStep::Auto => None,
    };
    let mut dt = match fixed {
        Some(dt) => dt,
        None => auto_dt(&cur, spec.scheme, redistributing)?,
    };
    let mut t = T::zero();
    let mut recorded = true;

    let termination = loop {
        if t >= spec.t_end {
            break Termination::TimeReached;
        }
        let remaining = spec.t_end - t;
        let h = if dt >= remaining { remaining } else { dt };
        cur = match step(&cur, h, spec) {
            Ok(next) => next,
            Err(e) => break termination_of(&e),
        };
        t = if h == remaining { spec.t_end } else { t + h };
        traj.steps += 1;
        recorded = false;

        if redistributing && traj.steps % every == 0 {
            cur = match resample_uniform(&cur, n) {
                Ok(c) => c,
                Err(e) => break termination_of(&e),
            };
            if fixed.is_none() {
                dt = match auto_dt(&cur, spec.scheme, true) {
                    Ok(dt) => dt,
                    Err(e) => break termination_of(&e),
                };
            }
        } else if !redistributing && fixed.is_none() {
            dt = auto_dt(&cur, spec.scheme, false)?;
        }

        let stop = match (spec.stop.length_below, spec.stop.min_spacing_below) {
            (Some(l), _) if length(&cur).map_or(true, |x| x < l) => Some(Termination::LengthBelow),
            (_, Some(eps)) if cur.min_spacing() < eps => Some(Termination::MinSpacingBelow),
            _ => None,
        };
        if traj.steps % spec.snapshot_every == 0 || stop.is_some() {
            if let Err(e) = traj.monitors.push(&cur, t) {
                break termination_of(&e);
            }
            traj.times.push(t);
            traj.snapshots.push(cur.clone());
            recorded = true;
        }
        if let Some(reason) = stop {
            break reason;
        }
    };
    if !recorded && termination == Termination::TimeReached {
        traj.monitors.push(&cur, t)?;
        traj.times.push(t);
        traj.snapshots.push(cur);
    }
    traj.termination = termination;
    Ok(traj)
}

/// Fit of `(L(t)/L(0))⁴ = 1 + 4Kt` over a trajectory, with `ρ` normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleProfile<T> {
    pub rho: T,
    #[serde(rename = "K")]
    pub k: T,
    pub rms_residual: T,
}

pub fn fit_scale_profile<T: Scalar>(traj: &Trajectory<T>) -> Result<ScaleProfile<T>> {
    let times = traj.monitors.times();
    let lengths = traj.monitors.lengths();
    if times.len() < 3 {
        return Err(Error::TooFewSnapshots { required: 3, got: times.len() });
    }
    let l0 = lengths[0];
    let ratio: Vec<T> = lengths.iter().map(|&l| (l / l0).powi(4)).collect();
    let stt: T = times.iter().map(|&t| t * t).sum();
    let str_: T = times.iter().zip(&ratio).map(|(&t, &r)| t * (r - T::one())).sum();
    let k = str_ / stt / T::of(4.0);
    let sq: T = times
        .iter()
        .zip(&ratio)
        .map(|(&t, &r)| {
            let model = T::one() + T::of(4.0) * k * t;
            let e = if model.abs() > T::epsilon() { (r - model) / model } else { r - model };
            e * e
        })
        .sum();
    let rms = (sq / T::of_usize(times.len())).sqrt();
    Ok(ScaleProfile { rho: T::one(), k, rms_residual: rms })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "T: Deserialize<'de>"))]
pub struct RunResult<T> {
    pub termination: Termination,
    pub steps: usize,
    pub t_final: T,
    pub snapshots: usize,
    pub scale_fit: Option<ScaleProfile<T>>,
}

/// Writes `config.json`, `snapshots/t_<index>.csv`, `monitors.csv` and
/// `result.json` under `dir`.
pub fn write_run<T: Scalar>(
    dir: impl AsRef<Path>,
    spec: &FlowSpec<T>,
    traj: &Trajectory<T>,
    scale_fit: Option<ScaleProfile<T>>,
) -> Result<()> {
    let dir = dir.as_ref();
    let snaps = dir.join("snapshots");
    fs::create_dir_all(&snaps)?;
    fs::write(dir.join("config.json"), to_json(spec)?)?;
    for (i, c) in traj.snapshots.iter().enumerate() {
        write_csv(c, snaps.join(snapshot_name(i, "csv")))?;
    }
    fs::write(dir.join("monitors.csv"), traj.monitors.to_csv_string())?;
    let result = RunResult {
        termination: traj.termination,
        steps: traj.steps,
        t_final: *traj.times.last().expect("nonempty"),
        snapshots: traj.snapshots.len(),
        scale_fit,
    };
    fs::write(dir.join("result.json"), to_json(&result)?)?;
    Ok(())
}

pub fn snapshot_name(index: usize, ext: &str) -> String {
    format!("t_{index:05}.{ext}")
}

fn to_json(v: &impl Serialize) -> Result<String> {
    serde_json::to_string_pretty(v).map(|s| s + "\n").map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{lemniscate_point, sample_analytic, AnalyticCurveSpec};
    use crate::geometry::{hausdorff_distance, signed_area};
    use crate::Vec2;
    use std::f64::consts::PI;

    fn ellipse(n: usize) -> DiscreteCurve<f64> {
        DiscreteCurve::closed(
            (0..n)
                .map(|i| {
                    let u = 2.0 * PI * i as f64 / n as f64;
                    Vec2::new(u.cos(), 0.5 * u.sin())
                })
                .collect(),
        )
    }

    #[test]
    fn circle_velocity_vanishes() {
        for r in [0.5, 1.0, 3.0] {
            let c = sample_analytic(&AnalyticCurveSpec::<f64>::circle(r), 256).unwrap();
            let v = normal_velocity(&curve_fields(&c).unwrap(), FlowKind::CurveDiffusion);
            assert!(v.iter().all(|x| x.abs() < 1e-6), "R = {r}");
        }
    }

    #[test]
    fn lemniscate_tip_moves_inward() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::lemniscate(1.0), 512).unwrap();
        let f = curve_fields(&c).unwrap();
        let v = normal_velocity(&f, FlowKind::CurveDiffusion);
        let exact = -lemniscate_point(0.0, 1.0).kappa_ss;
        assert!((v[0] - exact).abs() < 1e-2);
        assert!((f.normal[0] - Vec2::new(-1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn elastic_velocity_on_unit_circle() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::circle(1.0), 256).unwrap();
        let v = normal_velocity(&curve_fields(&c).unwrap(), FlowKind::Elastic);
        assert!(v.iter().all(|x| (x + 0.5).abs() < 1e-4));
    }

    #[test]
    fn circle_step_is_stationary() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::circle(1.0), 256).unwrap();
        for scheme in [Scheme::Explicit, Scheme::SemiImplicit] {
            let spec = FlowSpec { scheme, ..FlowSpec::new(1.0) };
            let next = step(&c, 1e-6, &spec).unwrap();
            let moved = c.nodes().iter().zip(next.nodes()).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max);
            assert!(moved < 1e-8, "{scheme:?} moved {moved}");
        }
    }

    #[test]
    fn explicit_step_keeps_lemniscate_area() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::lemniscate(1.0), 256).unwrap();
        let h: f64 = length(&c).unwrap() / 256.0;
        let spec = FlowSpec { scheme: Scheme::Explicit, ..FlowSpec::new(1.0) };
        let next = step(&c, h.powi(4) / 10.0, &spec).unwrap();
        assert!(signed_area(&next).unwrap().abs() < 1e-9);
    }

    #[test]
    fn semi_implicit_step_shortens_ellipse() {
        let c = ellipse(256);
        let next = step(&c, 1e-5, &FlowSpec::new(1.0)).unwrap();
        assert!(length(&next).unwrap() < length(&c).unwrap());
    }

    #[test]
    fn open_step_solves_banded_system() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::fresnel(0.3, 0.8, -1.5, 1.5), 128).unwrap();
        let next = step(&c, 1e-4, &FlowSpec::new(1.0)).unwrap();
        assert!(hausdorff_distance(&c, &next) < 1e-3);
    }

    #[test]
    fn smoothing_matrix_matches_fourth_difference() {
        let rhs: Vec<f64> = (0..12).map(|i| (i as f64 * 0.7).sin()).collect();
        let c = 0.3;
        let w = smooth(true, c, &rhs).unwrap();
        for i in 0..12 {
            let at = |k: isize| w[((i as isize + k).rem_euclid(12)) as usize];
            let d4 = at(-2) - 4.0 * at(-1) + 6.0 * at(0) - 4.0 * at(1) + at(2);
            assert!((w[i] + c * d4 - rhs[i]).abs() < 1e-12);
        }
        // open: D2ᵀD2 kills affine data, so constants and lines pass through
        let lin: Vec<f64> = (0..10).map(|i| 1.0 + 0.5 * i as f64).collect();
        let w = smooth(false, 5.0, &lin).unwrap();
        for (a, b) in w.iter().zip(&lin) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn explicit_envelope_enforced() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::circle(1.0), 64).unwrap();
        let spec = FlowSpec { scheme: Scheme::Explicit, dt: TimeStep::Fixed(1e-3), ..FlowSpec::new(1.0) };
        assert!(matches!(evolve(&c, &spec), Err(Error::StabilityViolation { .. })));
    }

    #[test]
    fn circle_run_reaches_time() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::circle(1.0), 64).unwrap();
        let spec = FlowSpec {
            snapshot_every: 100,
            stop: StopRule { min_spacing_below: Some(0.0), length_below: None },
            ..FlowSpec::new(1.0)
        };
        let traj = evolve(&c, &spec).unwrap();
        assert_eq!(traj.termination, Termination::TimeReached);
        assert_eq!(*traj.times.last().unwrap(), 1.0);
        assert!(hausdorff_distance(&c, traj.last()) < 1e-6);
        assert!(traj.times.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(traj.times.len(), traj.monitors.len());
    }

    #[test]
    fn length_stop_fires() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::lemniscate(1.0), 64).unwrap();
        let l0 = length(&c).unwrap();
        let spec = FlowSpec {
            snapshot_every: 1000,
            stop: StopRule { length_below: Some(0.95 * l0), min_spacing_below: None },
            ..FlowSpec::new(0.04)
        };
        let traj = evolve(&c, &spec).unwrap();
        assert_eq!(traj.termination, Termination::LengthBelow);
        assert!(length(traj.last()).unwrap() < 0.95 * l0);
        assert!(traj.times.last().unwrap() < &0.04);
    }

    #[test]
    fn circle_scale_fit_is_flat() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::circle(1.0), 64).unwrap();
        let traj = evolve(&c, &FlowSpec { snapshot_every: 50, ..FlowSpec::new(0.5) }).unwrap();
        let fit = fit_scale_profile(&traj).unwrap();
        assert!(fit.k.abs() < 1e-6);
        assert_eq!(fit.rho, 1.0);
    }

    #[test]
    fn scale_fit_needs_three_samples() {
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::circle(1.0), 64).unwrap();
        let traj = evolve(&c, &FlowSpec { snapshot_every: 1_000_000, ..FlowSpec::new(1e-3) }).unwrap();
        assert_eq!(traj.snapshots.len(), 2);
        assert_eq!(fit_scale_profile(&traj), Err(Error::TooFewSnapshots { required: 3, got: 2 }));
    }

    #[test]
    fn spec_json_round_trip() {
        let spec: FlowSpec<f64> = serde_json::from_str(r#"{"t_end": 0.5, "dt": "auto"}"#).unwrap();
        assert_eq!(spec, FlowSpec::new(0.5));
        let spec: FlowSpec<f64> =
            serde_json::from_str(r#"{"t_end": 1, "dt": 1e-6, "scheme": "explicit", "kind": "elastic"}"#).unwrap();
        assert_eq!(spec.dt, TimeStep::Fixed(1e-6));
        assert_eq!(spec.kind, FlowKind::Elastic);
        let back: FlowSpec<f64> = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<FlowSpec<f64>>(r#"{"t_end": 1, "dt": "fast"}"#).is_err());
        let bad: FlowSpec<f64> = serde_json::from_str(r#"{"t_end": -1}"#).unwrap();
        assert!(matches!(bad.validate(), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn run_directory_layout() {
        let dir = tempfile::tempdir().unwrap();
        let c = sample_analytic(&AnalyticCurveSpec::<f64>::circle(1.0), 32).unwrap();
        let spec = FlowSpec { snapshot_every: 5, ..FlowSpec::new(0.01) };
        let traj = evolve(&c, &spec).unwrap();
        write_run(dir.path(), &spec, &traj, fit_scale_profile(&traj).ok()).unwrap();
        assert!(dir.path().join("config.json").exists());
        assert!(dir.path().join("snapshots").join(snapshot_name(0, "csv")).exists());
        let monitors = fs::read_to_string(dir.path().join("monitors.csv")).unwrap();
        assert_eq!(monitors.lines().count(), traj.times.len() + 1);
        let result: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("result.json")).unwrap()).unwrap();
        assert_eq!(result["termination"], "time_reached");
    }
}
