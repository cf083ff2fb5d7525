#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use curvediff::analytic::{sample_analytic, AnalyticCurveSpec};
use curvediff::{Curve, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PERTURBED_SEED: u64 = 2024;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

pub fn ellipse(a: f64, b: f64, n: usize) -> Curve {
    Curve::closed(
        (0..n)
            .map(|i| {
                let u = 2.0 * PI * i as f64 / n as f64;
                Vec2::new(a * u.cos(), b * u.sin())
            })
            .collect(),
    )
}

/// Ellipse (1, 0.5) with a smooth radial perturbation: Fourier modes 2..=5
/// with coefficients drawn uniformly from [-1, 1], averaged, times 0.1.
pub fn perturbed_ellipse(n: usize, seed: u64) -> Curve {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let modes: Vec<(f64, f64)> = (2..=5).map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    Curve::closed(
        (0..n)
            .map(|i| {
                let u = 2.0 * PI * i as f64 / n as f64;
                let noise = modes
                    .iter()
                    .enumerate()
                    .map(|(j, (a, b))| {
                        let k = (j + 2) as f64;
                        a * (k * u).cos() + b * (k * u).sin()
                    })
                    .sum::<f64>()
                    / modes.len() as f64;
                Vec2::new(u.cos(), 0.5 * u.sin()) * (1.0 + 0.1 * noise)
            })
            .collect(),
    )
}

pub fn circle(r: f64, n: usize) -> Curve {
    sample_analytic(&AnalyticCurveSpec::circle(r), n).unwrap()
}

pub fn lemniscate(scale: f64, n: usize) -> Curve {
    sample_analytic(&AnalyticCurveSpec::lemniscate(scale), n).unwrap()
}

/// κ(s) = π s on s ∈ [−2, 2].
pub fn clothoid(n: usize) -> Curve {
    sample_analytic(&AnalyticCurveSpec::fresnel(0.0, PI / 2.0, -2.0, 2.0), n).unwrap()
}

/// Node index range whose arc length from the clothoid's start lies in
/// `[lo, hi]` measured from the centre.
pub fn clothoid_window(curve: &Curve, lo: f64, hi: f64) -> std::ops::Range<usize> {
    let f = curve_fields_of(curve);
    let half = f.s[f.s.len() - 1] / 2.0;
    let a = f.s.iter().position(|&s| s - half >= lo).unwrap();
    let b = f.s.iter().rposition(|&s| s - half <= hi).unwrap();
    a..b + 1
}

pub fn curve_fields_of(curve: &Curve) -> curvediff::geometry::CurveFields<f64> {
    curvediff::geometry::curve_fields(curve).unwrap()
}

pub fn fixtures() -> Vec<(&'static str, Curve)> {
    vec![
        ("circle.csv", circle(1.0, 256)),
        ("lemniscate.csv", lemniscate(1.0, 512)),
        ("clothoid.csv", clothoid(512)),
        ("perturbed_ellipse.csv", perturbed_ellipse(256, PERTURBED_SEED)),
    ]
}
