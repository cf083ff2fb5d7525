//! Run configurations for `curvediff evolve`.
//!
//! ```json
//! {
//!   "curve": { "spec": { "kind": "lemniscate", "scale": 1.0 }, "nodes": 512 },
//!   "flow": { "t_end": 0.0208333, "snapshot_every": 10 },
//!   "out": "runs/lemniscate",
//!   "emit_svg": true,
//!   "fit_scale": true
//! }
//! ```
//!
//! The curve comes either from `{"file": "curve.csv"}` or from an analytic
//! `spec` plus `nodes`. Relative paths are resolved against the directory
//! holding the configuration file.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use curvediff::analytic::sample_analytic;
use curvediff::flow::{evolve, fit_scale_profile, snapshot_name, write_run, FlowSpec};
use curvediff::geometry::io::parse_csv;
use curvediff::{Curve, CurveSpec};
use serde::Deserialize;

use crate::svg::to_svg;
use crate::{read_text, write_text, Failure};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSource {
    pub file: Option<PathBuf>,
    pub spec: Option<CurveSpec>,
    pub nodes: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub curve: CurveSource,
    pub flow: FlowSpec<f64>,
    pub out: PathBuf,
    #[serde(default)]
    pub emit_svg: bool,
    /// Fit `(L/L0)⁴ = 1 + 4Kt` to the length history and store it in `result.json`.
    #[serde(default)]
    pub fit_scale: bool,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = read_text(path)?;
        let mut cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        if let Some(f) = &cfg.curve.file {
            cfg.curve.file = Some(base.join(f));
        }
        cfg.out = base.join(&cfg.out);
        cfg.flow.validate()?;
        Ok(cfg)
    }

    pub fn initial_curve(&self) -> Result<Curve, Failure> {
        match (&self.curve.file, &self.curve.spec, self.curve.nodes) {
            (Some(file), None, None) => Ok(parse_csv(&read_text(file)?)?),
            (None, Some(spec), Some(n)) => Ok(sample_analytic(spec, n)?),
            (None, Some(_), None) => Err(Failure::Input("curve spec needs a node count".into())),
            _ => Err(Failure::Input("curve needs exactly one of `file` or `spec` + `nodes`".into())),
        }
    }
}

pub fn run(config: &Path) -> Result<(), Failure> {
    let cfg = RunConfig::load(config)?;
    let curve = cfg.initial_curve()?;
    let traj = evolve(&curve, &cfg.flow)?;
    let fit = if cfg.fit_scale {
        match fit_scale_profile(&traj) {
            Ok(f) => Some(f),
            Err(e) => {
                eprintln!("curvediff: {}: no scale fit: {e}", config.display());
                None
            }
        }
    } else {
        None
    };
    write_run(&cfg.out, &cfg.flow, &traj, fit)?;
    if cfg.emit_svg {
        for (i, c) in traj.snapshots.iter().enumerate() {
            write_text(&cfg.out.join("snapshots").join(snapshot_name(i, "svg")), &to_svg(c))?;
        }
    }
    Ok(())
}

/// Runs every configuration on up to `jobs` threads and returns the worst
/// exit code.
pub fn evolve_all(configs: &[PathBuf], jobs: usize) -> u8 {
    let next = AtomicUsize::new(0);
    let worst = Mutex::new(0u8);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, configs.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = configs.get(i) else { break };
                if let Err(e) = run(path) {
                    eprintln!("curvediff: {}: {e}", path.display());
                    let mut w = worst.lock().unwrap();
                    *w = (*w).max(e.code());
                }
            });
        }
    });
    worst.into_inner().unwrap()
}
