use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("curve needs at least {required} nodes, got {got}")]
    TooFewNodes { required: usize, got: usize },
    #[error("segment {index} is degenerate (length below regularity threshold)")]
    NonRegular { index: usize },
    #[error("operation requires a closed curve")]
    OpenCurve,
    #[error("turning-angle sum {0} is not within 0.1 of an integer")]
    AmbiguousTurning(f64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("quadrature did not reach tolerance within the bisection depth limit")]
    QuadratureFailure,
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("singular banded system at row {0}")]
    SolveFailure(usize),
    #[error("non-finite value produced")]
    NonFinite,
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),
    #[error("need at least {required} snapshots, got {got}")]
    TooFewSnapshots { required: usize, got: usize },
    #[error("explicit time step {dt} violates the stability envelope: dt*(N/L)^4 = {ratio} > 0.125")]
    StabilityViolation { dt: f64, ratio: f64 },
    #[error("invalid flow specification: {0}")]
    InvalidSpec(String),
    #[error("isoperimetric ratio undefined (zero enclosed area)")]
    Undefined,
    #[error("malformed curve file, line {line}: {msg}")]
    MalformedCsv { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
