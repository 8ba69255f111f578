//! Geometry of evolutionary graph states of Ising spin systems.
//!
//! A graph on `N` vertices defines the Ising Hamiltonian `H = J Σ_{(i,j)∈E} σᵢˣσⱼˣ`.
//! Evolving `|0…0⟩` under `H` gives a graph state whose velocity, curvature and
//! torsion depend only on the number of edges, triangles and 4-cycles of the
//! graph. This crate provides:
//!
//! - [`graph`]: graph ingestion and exact motif counting,
//! - [`pauli`]: symbolic expansion of `Hⁿ` into σˣ-parity operators,
//! - [`geometry`]: velocity, curvature, torsion, Wootters distance, geodesics,
//! - [`simulator`]: an exact statevector simulator with seeded shot sampling,
//! - [`protocols`]: `|U|²` sweeps, quadratic fits, correlator estimation,
//!   moment reconstruction and inversion back to motif counts,
//! - [`circuit`]: a small circuit IR with OpenQASM 2.0 emission.
//!
//! Units: moments are reported in units of `Jⁿ`, velocity in `γJ/ħ`, and the
//! evolution parameter is `φ = Jt/ħ`.

pub mod circuit;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod numfmt;
pub mod pauli;
pub mod protocols;
pub mod simulator;

pub use circuit::{Circuit, GateKind, GateOp};
pub use error::{Error, Location, Result};
pub use geometry::{GeometryConfig, GeometryReport, IntegerMoments, Moments};
pub use graph::{Graph, GraphFormat, MotifCounts, DEFAULT_MAX_VERTICES};
pub use pauli::{ParitySubset, PauliExpansion};
pub use protocols::{
    FitResult, InversionResult, Mode, ReconstructionReport, SweepPoint, SweepSeries,
};
pub use simulator::{Gate, NoiseModel, ShotCounts, StateVector, DEFAULT_MAX_QUBITS};
