//! Conserved and monotone quantities along trajectories, and lifespan bounds.

use serde::{Deserialize, Serialize};

use crate::analytic::elliptic_k;
use crate::error::{Error, Result};
use crate::flow::Trajectory;
use crate::geometry::io::fmt_f64;
use crate::geometry::{curve_fields, length, signed_area, CurveFields, DiscreteCurve};
use crate::scalar::Scalar;

/// Monitor values of one snapshot. `area` and `iso` are `None` for open
/// curves; `iso` is also `None` when the enclosed area vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonitorRecord<T> {
    pub t: T,
    pub length: T,
    pub area: Option<T>,
    pub iso: Option<T>,
    /// `∫ κ_s² dℓ`
    pub diss: T,
    /// Running trapezoidal time integral of `diss`.
    pub q: T,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MonitorSeries<T> {
    pub records: Vec<MonitorRecord<T>>,
}

pub fn dissipation<T: Scalar>(fields: &CurveFields<T>) -> T {
    fields.integrate(|i| fields.kappa_s[i] * fields.kappa_s[i])
}

/// `L² / (4π A)`, or `None` when `|A| <= 1e-12 L²`.
pub fn isoperimetric_ratio<T: Scalar>(curve: &DiscreteCurve<T>) -> Result<Option<T>> {
    let a = signed_area(curve)?;
    let l = length(curve)?;
    Ok(iso_from(l, a))
}

fn iso_from<T: Scalar>(l: T, a: T) -> Option<T> {
    if a.abs() <= T::of(1e-12) * l * l {
        None
    } else {
        Some(l * l / (T::of(4.0) * T::PI() * a))
    }
}

impl<T: Scalar> MonitorSeries<T> {
    pub fn new() -> Self {
        Self { records: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Appends the values of `curve` at time `t`, extending `Q`.
    pub fn push(&mut self, curve: &DiscreteCurve<T>, t: T) -> Result<()> {
        let fields = curve_fields(curve)?;
        self.push_with_fields(curve, &fields, t)
    }

    pub fn push_with_fields(&mut self, curve: &DiscreteCurve<T>, fields: &CurveFields<T>, t: T) -> Result<()> {
        let l = length(curve)?;
        let area = if curve.is_closed() { Some(signed_area(curve)?) } else { None };
        let iso = area.and_then(|a| iso_from(l, a));
        let diss = dissipation(fields);
        let q = match self.records.last() {
            Some(prev) => prev.q + (t - prev.t) * (prev.diss + diss) * T::of(0.5),
            None => T::zero(),
        };
        self.records.push(MonitorRecord { t, length: l, area, iso, diss, q });
        Ok(())
    }

    pub fn times(&self) -> Vec<T> {
        self.records.iter().map(|r| r.t).collect()
    }

    pub fn lengths(&self) -> Vec<T> {
        self.records.iter().map(|r| r.length).collect()
    }

    /// CSV with header `t,L,A,I,Q,diss`; undefined values are left blank.
    pub fn to_csv_string(&self) -> String {
        let opt = |v: Option<T>| v.map(|x| fmt_f64(x.as_f64())).unwrap_or_default();
        let mut out = String::from("t,L,A,I,Q,diss\n");
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_f64(r.t.as_f64()),
                fmt_f64(r.length.as_f64()),
                opt(r.area),
                opt(r.iso),
                fmt_f64(r.q.as_f64()),
                fmt_f64(r.diss.as_f64()),
            ));
        }
        out
    }
}

/// Recomputes the monitor series from the snapshots of a trajectory.
pub fn monitor_trajectory<T: Scalar>(traj: &Trajectory<T>) -> Result<MonitorSeries<T>> {
    let mut series = MonitorSeries::new();
    for (curve, &t) in traj.snapshots.iter().zip(&traj.times) {
        series.push(curve, t)?;
    }
    Ok(series)
}

/// Largest relative deviation between the recorded isoperimetric ratio and
/// `I(0) exp(−∫ 2 diss / L dt)` integrated by the trapezoid rule.
pub fn isoperimetric_decay_check<T: Scalar>(series: &MonitorSeries<T>) -> Result<T> {
    let first = series.records.first().ok_or(Error::TooFewSnapshots { required: 1, got: 0 })?;
    let i0 = first.iso.ok_or(Error::Undefined)?;
    let mut exponent = T::zero();
    let mut worst = T::zero();
    for pair in series.records.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let iso = b.iso.ok_or(Error::Undefined)?;
        let rate = |r: &MonitorRecord<T>| T::of(2.0) * r.diss / r.length;
        exponent = exponent + (b.t - a.t) * (rate(a) + rate(b)) * T::of(0.5);
        let predicted = i0 * (-exponent).exp();
        worst = worst.max(((predicted - iso) / iso).abs());
    }
    Ok(worst)
}

/// Existence-time bounds for a figure-eight of initial length `L0`, and the
/// extinction time of the self-similar lemniscate of the same length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LifespanBounds<T> {
    #[serde(rename = "T_star")]
    pub t_star: T,
    #[serde(rename = "T_tilde")]
    pub t_tilde: T,
    #[serde(rename = "T_fig8")]
    pub t_fig8: T,
    pub ratio_star: T,
    pub ratio_tilde: T,
}

pub fn time_bounds<T: Scalar>(l0: T) -> Result<LifespanBounds<T>> {
    if !(l0 > T::zero()) || !l0.is_finite() {
        return Err(Error::DomainError(format!("initial length must be positive, got {l0}")));
    }
    let l4 = l0.powi(4);
    let pi = T::PI();
    let k = elliptic_k(-T::one())?;
    let t_star = l4 / (T::of(64.0) * pi.powi(4));
    let t_tilde = l4 / (T::of(768.0) * pi * pi);
    let t_fig8 = l4 / (T::of(3.0 * 2048.0) * k.powi(4));
    Ok(LifespanBounds { t_star, t_tilde, t_fig8, ratio_star: t_star / t_fig8, ratio_tilde: t_tilde / t_fig8 })
}
