use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Where in an input document a parse problem was found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    /// 1-based line of an edge-list file.
    Line(usize),
    /// JSON path such as `edges[2][1]`.
    Field(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(line) => write!(f, "line {line}"),
            Location::Field(path) => write!(f, "field `{path}`"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{at}: malformed input: {reason}")]
    Malformed { at: Location, reason: String },
    #[error("{at}: self-loop on vertex {vertex}")]
    SelfLoop { at: Location, vertex: usize },
    #[error("{at}: vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange {
        at: Location,
        vertex: usize,
        n: usize,
    },
    #[error("{at}: negative vertex index {value}")]
    NegativeIndex { at: Location, value: i64 },
    #[error("graph has {n} vertices, limit is {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("{n} qubits requested, limit is {max}")]
    QubitCapacity { n: usize, max: usize },
    #[error("qubit {qubit} out of range for a {n}-qubit register")]
    QubitIndex { qubit: usize, n: usize },
    #[error("gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),
    #[error("state dimensions differ: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },
    #[error("gate `{kind}` expects {expected_params} parameter(s) and {expected_qubits} qubit(s)")]
    GateArity {
        kind: &'static str,
        expected_params: usize,
        expected_qubits: usize,
    },
    #[error("gate on qubit {0} after it was measured")]
    GateAfterMeasurement(usize),

    #[error("power {n} exceeds the cap of {max}; lift the cap explicitly to expand further")]
    PowerCap { n: u32, max: u32 },
    #[error("expansion coefficient overflowed u64")]
    CoefficientOverflow,
    #[error("parity subset must be non-empty")]
    EmptySubset,

    #[error("curvature undefined: second moment is {m2}, must be positive")]
    UndefinedCurvature { m2: f64 },
    #[error("geodesic undefined: states are orthogonal")]
    GeodesicUndefined,
    #[error("invalid geometry config: {0}")]
    InvalidConfig(String),

    #[error("invalid phi grid: {0}")]
    InvalidGrid(String),
    #[error("fit needs at least {need} points, got {got}")]
    TooFewPoints { got: usize, need: usize },
    #[error("singular fit: all phi² values coincide")]
    SingularFit,
    #[error("shots must be at least 1")]
    ZeroShots,
    #[error("readout flip probability {0} outside [0, 0.5]")]
    InvalidProbability(f64),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerics rather than of the input
    /// (singular fits, undefined geometry).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::UndefinedCurvature { .. }
                | Error::GeodesicUndefined
                | Error::SingularFit
                | Error::CoefficientOverflow
        )
    }
}
