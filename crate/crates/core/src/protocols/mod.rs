//! Emulated measurement pipelines.
//!
//! Every protocol runs either in exact mode (expectations read off the
//! statevector) or in shot mode, where each circuit is sampled with a seed
//! derived from a base seed: sweep point `k` uses `seed + k`, and the `k`-th
//! correlator of a reconstruction (ascending subset mask) uses `seed + k`.

mod correlator;
mod fit;
mod grid;
mod invert;
mod sweep;

pub use correlator::{
    estimate_correlator, estimate_correlator_on_state, geometry_from_protocol, reconstruct_moments,
    CorrelatorEstimate, ReconstructionReport,
};
pub use fit::{quadratic_fit, quadratic_fit_points, FitResult, MIN_FIT_POINTS};
pub use grid::{chain_fit_window, full_sweep_grid, narrow_fit_window, phi_grid};
pub use invert::{invert_motifs, InversionResult, RESIDUAL_WARNING};
pub use sweep::{usq_sweep, SweepPoint, SweepSeries};

use serde::Serialize;

use crate::simulator::{NoiseModel, DEFAULT_MAX_QUBITS};

pub const DEFAULT_SHOTS: u64 = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Shots { shots: u64, seed: u64 },
}

/// How protocol circuits are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Execution {
    pub mode: Mode,
    pub noise: NoiseModel,
    pub max_qubits: usize,
}

impl Execution {
    pub fn exact() -> Self {
        Execution {
            mode: Mode::Exact,
            noise: NoiseModel::NONE,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }

    pub fn shots(shots: u64, seed: u64) -> Self {
        Execution {
            mode: Mode::Shots { shots, seed },
            ..Self::exact()
        }
    }

    pub fn with_noise(self, noise: NoiseModel) -> Self {
        Execution { noise, ..self }
    }

    pub fn with_max_qubits(self, max_qubits: usize) -> Self {
        Execution { max_qubits, ..self }
    }
}
