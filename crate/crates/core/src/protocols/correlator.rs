use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{Execution, Mode};
use crate::circuit::{build_correlator_circuit, run_on};
use crate::error::{Error, Result};
use crate::geometry::{report_from_moments, GeometryConfig, GeometryReport, Moments};
use crate::graph::Graph;
use crate::pauli::{expand_powers, ParitySubset};
use crate::simulator::{evolve_graph_state_with_cap, sample_counts, NoiseModel, StateVector};

/// Estimate of `⟨∏σˣ⟩`. `shots = 0` marks a value that was not sampled:
/// an exact evaluation or the identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrelatorEstimate {
    pub value: f64,
    pub stderr: f64,
    pub shots: u64,
}

impl CorrelatorEstimate {
    pub const IDENTITY: CorrelatorEstimate = CorrelatorEstimate {
        value: 1.0,
        stderr: 0.0,
        shots: 0,
    };

    fn exact(value: f64) -> Self {
        CorrelatorEstimate {
            value,
            stderr: 0.0,
            shots: 0,
        }
    }
}

/// Samples `⟨∏_{v∈S} σᵥˣ⟩` by rotating each qubit of `S` with `RY(−π/2)` and
/// averaging the z-basis parity of those qubits.
///
/// The state is `|0…0⟩`, or the evolved graph state when `prep` is given.
/// The empty subset is the identity and returns [`CorrelatorEstimate::IDENTITY`]
/// without sampling.
pub fn estimate_correlator(
    n: usize,
    subset: ParitySubset,
    prep: Option<(&Graph, f64)>,
    shots: u64,
    seed: u64,
    noise: NoiseModel,
) -> Result<CorrelatorEstimate> {
    let state = match prep {
        Some((g, phi)) => {
            if g.n() > n {
                return Err(Error::QubitIndex {
                    qubit: g.n() - 1,
                    n,
                });
            }
            let padded = Graph::with_limit(n, g.edges().iter().copied(), n.max(g.n()))?;
            evolve_graph_state_with_cap(&padded, phi, n)?
        }
        None => StateVector::zero_with_cap(n, n)?,
    };
    estimate_correlator_on_state(state, subset, shots, seed, noise)
}

/// [`estimate_correlator`] on an arbitrary prepared state.
pub fn estimate_correlator_on_state(
    state: StateVector,
    subset: ParitySubset,
    shots: u64,
    seed: u64,
    noise: NoiseModel,
) -> Result<CorrelatorEstimate> {
    if subset.is_empty() {
        return Ok(CorrelatorEstimate::IDENTITY);
    }
    if subset.span() > state.n_qubits() {
        return Err(Error::QubitIndex {
            qubit: subset.span() - 1,
            n: state.n_qubits(),
        });
    }
    let circuit = build_correlator_circuit(state.n_qubits(), subset)?;
    let rotated = run_on(state, &circuit)?;
    let counts = sample_counts(&rotated, shots, seed, noise)?;
    let value = counts.parity_mean(subset.mask()).clamp(-1.0, 1.0);
    let stderr = ((1.0 - value * value).max(0.0) / shots as f64).sqrt();
    Ok(CorrelatorEstimate {
        value,
        stderr,
        shots,
    })
}

/// Moments `m₂, m₃, m₄` rebuilt from correlators measured in `|0…0⟩`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructionReport {
    pub moments: Moments,
    /// Standard errors of the moments from the correlator standard errors.
    pub moment_stderr: Moments,
    pub correlator_estimates: BTreeMap<ParitySubset, CorrelatorEstimate>,
    pub shots_per_term: u64,
}

/// Expands `H²`, `H³`, `H⁴` into parity operators, estimates each distinct
/// non-identity correlator once in `|0…0⟩`, and recombines
/// `mₙ = c_n(∅) + Σ_S c_n(S)·⟨S⟩`.
pub fn reconstruct_moments(g: &Graph, exec: &Execution) -> Result<ReconstructionReport> {
    if g.n() > exec.max_qubits {
        return Err(Error::QubitCapacity {
            n: g.n(),
            max: exec.max_qubits,
        });
    }
    let expansions = expand_powers(g, 4)?;
    let mut subsets: Vec<ParitySubset> = expansions[2..]
        .iter()
        .flat_map(|e| e.correlators().map(|(s, _)| s))
        .collect();
    subsets.sort();
    subsets.dedup();

    let vacuum = StateVector::zero_with_cap(g.n(), exec.max_qubits)?;
    let estimates: Vec<CorrelatorEstimate> = match exec.mode {
        Mode::Exact => subsets
            .iter()
            .map(|&s| vacuum.parity_expectation(s).map(CorrelatorEstimate::exact))
            .collect::<Result<_>>()?,
        Mode::Shots { shots, seed } => subsets
            .par_iter()
            .enumerate()
            .map(|(k, &s)| {
                estimate_correlator_on_state(
                    vacuum.clone(),
                    s,
                    shots,
                    seed.wrapping_add(k as u64),
                    exec.noise,
                )
            })
            .collect::<Result<_>>()?,
    };
    let table: BTreeMap<ParitySubset, CorrelatorEstimate> =
        subsets.into_iter().zip(estimates).collect();

    let moment = |power: usize| -> (f64, f64) {
        let e = &expansions[power];
        let mut value = e.identity_coefficient() as f64;
        let mut var = 0.0;
        for (s, c) in e.correlators() {
            let est = table[&s];
            value += c as f64 * est.value;
            var += (c as f64 * est.stderr).powi(2);
        }
        (value, var.sqrt())
    };
    let (m2, e2) = moment(2);
    let (m3, e3) = moment(3);
    let (m4, e4) = moment(4);
    Ok(ReconstructionReport {
        moments: Moments { m2, m3, m4 },
        moment_stderr: Moments {
            m2: e2,
            m3: e3,
            m4: e4,
        },
        correlator_estimates: table,
        shots_per_term: match exec.mode {
            Mode::Exact => 0,
            Mode::Shots { shots, .. } => shots,
        },
    })
}

/// Reconstructed moments turned into velocity, curvature and torsion.
pub fn geometry_from_protocol(
    g: &Graph,
    exec: &Execution,
    cfg: &GeometryConfig,
) -> Result<GeometryReport> {
    report_from_moments(&reconstruct_moments(g, exec)?.moments, cfg)
}
