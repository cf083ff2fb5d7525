//! `curvediff`: generate curves, run flows, classify solitons and print
//! lifespan bounds.
//!
//! Exit codes: 0 success, 1 negative verdict (`check`), 2 invalid input,
//! 3 I/O failure.

mod run;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curvediff::analytic::{sample_analytic, CurveKind, FresnelFamily};
use curvediff::geometry::io::{parse_csv, to_csv_string};
use curvediff::monitor::time_bounds;
use curvediff::soliton::{classify, Verdict, DEFAULT_TOL};
use curvediff::{Curve, CurveSpec, Vec2};

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Io(_) => 3,
        }
    }
}

impl From<curvediff::Error> for Failure {
    fn from(e: curvediff::Error) -> Self {
        match e {
            curvediff::Error::Io(m) => Failure::Io(m),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) | Failure::Io(m) => f.write_str(m),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

#[derive(Parser)]
#[command(name = "curvediff", version, about = "Curve diffusion flow of plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample an analytic curve and write it as CSV.
    Generate(GenerateArgs),
    /// Evolve curves as described by run configuration files.
    Evolve {
        /// Run configuration (JSON); repeat for several runs.
        #[arg(long = "config", required = true)]
        configs: Vec<PathBuf>,
        /// Number of runs evolved concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Fit the soliton equations to a curve file and print the report.
    Check {
        curve: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Print the lifespan bounds for a figure-eight of initial length L0.
    Bounds {
        #[arg(allow_negative_numbers = true)]
        l0: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Circle,
    Lemniscate,
    Fresnel,
    Line,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    kind: Option<Kind>,
    /// Curve specification as JSON text or a path to a JSON file.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long, default_value_t = 512)]
    nodes: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    radius: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    scale: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    c2: f64,
    /// Rotation angle of a Fresnel curve.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    smin: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    smax: f64,
    /// Centre of a circle, anchor point of a line, or translation of a
    /// Fresnel curve.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    point: Option<Vec<f64>>,
    /// Direction of a line.
    #[arg(long, num_args = 2, value_names = ["X", "Y"], allow_negative_numbers = true)]
    direction: Option<Vec<f64>>,
    /// Reverse the node order.
    #[arg(long)]
    reverse: bool,
}

fn vec2(v: &Option<Vec<f64>>, default: Vec2<f64>) -> Vec2<f64> {
    v.as_ref().map_or(default, |v| Vec2::new(v[0], v[1]))
}

fn parse_spec(text: &str) -> Result<CurveSpec, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("invalid curve spec: {e}")))
}

fn generate(a: GenerateArgs) -> Result<(), Failure> {
    let spec = match (&a.spec, a.kind) {
        (Some(s), _) => {
            let text = if s.trim_start().starts_with('{') { s.clone() } else { read_text(Path::new(s))? };
            parse_spec(&text)?
        }
        (None, Some(kind)) => {
            let point = vec2(&a.point, Vec2::zero());
            let kind = match kind {
                Kind::Circle => CurveKind::Circle { radius: a.radius, center: point },
                Kind::Lemniscate => CurveKind::Lemniscate { scale: a.scale },
                Kind::Fresnel => CurveKind::Fresnel {
                    family: FresnelFamily { c1: a.c1, c2: a.c2, theta: a.theta, translation: point },
                    s_min: a.smin,
                    s_max: a.smax,
                },
                Kind::Line => CurveKind::Line {
                    point,
                    direction: vec2(&a.direction, Vec2::new(1.0, 0.0)),
                    s_min: a.smin,
                    s_max: a.smax,
                },
            };
            CurveSpec::new(kind)
        }
        (None, None) => unreachable!("clap requires --kind or --spec"),
    };
    let spec = if a.reverse { spec.reversed() } else { spec };
    let curve = sample_analytic(&spec, a.nodes)?;
    let text = to_csv_string(&curve);
    match &a.out {
        Some(path) => write_text(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check(path: &Path, tol: f64) -> Result<u8, Failure> {
    if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
        return Err(Failure::Input(format!("tolerance must be positive, got {tol}")));
    }
    let curve: Curve = parse_csv(&read_text(path)?)?;
    let report = classify(&curve, tol);
    println!("{}", report.to_json());
    Ok(if report.verdict == Verdict::None { 1 } else { 0 })
}

fn bounds(l0: f64) -> Result<(), Failure> {
    let b = time_bounds(l0)?;
    println!("{}", serde_json::to_string_pretty(&b).expect("bounds serialize"));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => generate(a).map(|_| 0),
        Command::Evolve { configs, jobs } => Ok(run::evolve_all(&configs, jobs)),
        Command::Check { curve, tol } => check(&curve, tol),
        Command::Bounds { l0 } => bounds(l0).map(|_| 0),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("curvediff: {e}");
            ExitCode::from(e.code())
        }
    }
}
