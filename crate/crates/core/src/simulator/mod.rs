//! Exact statevector simulation.
//!
//! Qubit `q` is bit `q` of the basis index (qubit 0 is the least significant
//! bit). The same convention is used by the circuit interpreter and by the
//! OpenQASM emitter.

mod gates;
mod sampling;

pub use gates::Gate;
pub use sampling::{sample_counts, NoiseModel, ShotCounts};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pauli::ParitySubset;

pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Below this many qubits everything runs on the calling thread.
const PARALLEL_QUBITS: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩` on `n` qubits, `1 ≤ n ≤ DEFAULT_MAX_QUBITS`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::zero_with_cap(n, DEFAULT_MAX_QUBITS)
    }

    pub fn zero_with_cap(n: usize, max_qubits: usize) -> Result<Self> {
        if n == 0 || n > max_qubits || n >= usize::BITS as usize - 1 {
            return Err(Error::QubitCapacity { n, max: max_qubits });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n_qubits: n, amps })
    }

    /// Wraps raw amplitudes, normalizing them. The length must be `2ⁿ`, `n ≥ 1`.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::QubitCapacity {
                n: len,
                max: DEFAULT_MAX_QUBITS,
            });
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidConfig("state has zero norm".into()));
        }
        Ok(StateVector {
            n_qubits: len.trailing_zeros() as usize,
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Tensor product of single-qubit states `α|0⟩ + β|1⟩`, qubit 0 first.
    pub fn product(qubits: &[(Complex64, Complex64)]) -> Result<Self> {
        let mut amps = vec![Complex64::new(1.0, 0.0)];
        for &(zero, one) in qubits {
            let mut next = Vec::with_capacity(amps.len() * 2);
            next.extend(amps.iter().map(|&a| a * zero));
            next.extend(amps.iter().map(|&a| a * one));
            amps = next;
        }
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_dims(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub(crate) fn check_same_dims(&self, other: &StateVector) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n_qubits {
            return Err(Error::QubitIndex {
                qubit: q,
                n: self.n_qubits,
            });
        }
        Ok(())
    }

    /// Applies `exp(iφ σᵢˣσⱼˣ) = cos φ + i sin φ σᵢˣσⱼˣ`.
    pub fn apply_edge_rotation(&mut self, i: usize, j: usize, phi: f64) -> Result<()> {
        self.check_qubit(i)?;
        self.check_qubit(j)?;
        if i == j {
            return Err(Error::RepeatedQubit(i));
        }
        let mut scratch = Vec::new();
        self.xor_mix(1 << i | 1 << j, phi, &mut scratch);
        Ok(())
    }

    /// `amp[b] ← cos φ·amp[b] + i sin φ·amp[b ⊕ mask]`.
    fn xor_mix(&mut self, mask: usize, phi: f64, scratch: &mut Vec<Complex64>) {
        let c = phi.cos();
        let is = Complex64::new(0.0, phi.sin());
        if self.n_qubits >= PARALLEL_QUBITS {
            let src = &self.amps;
            scratch.resize(src.len(), Complex64::default());
            scratch
                .par_iter_mut()
                .enumerate()
                .for_each(|(b, out)| *out = src[b] * c + src[b ^ mask] * is);
            std::mem::swap(&mut self.amps, scratch);
        } else {
            let low = mask & mask.wrapping_neg();
            for b in 0..self.amps.len() {
                if b & low == 0 {
                    let partner = b ^ mask;
                    let (x, y) = (self.amps[b], self.amps[partner]);
                    self.amps[b] = x * c + y * is;
                    self.amps[partner] = y * c + x * is;
                }
            }
        }
    }

    /// `|⟨0…0|ψ⟩|²`.
    pub fn vacuum_return_probability(&self) -> f64 {
        self.amps[0].norm_sqr()
    }

    /// `⟨ψ|∏_{v∈S} σᵥˣ|ψ⟩ = Σ_b conj(amp[b])·amp[b ⊕ S]`.
    pub fn parity_expectation(&self, subset: ParitySubset) -> Result<f64> {
        if subset.span() > self.n_qubits {
            return Err(Error::QubitIndex {
                qubit: subset.span() - 1,
                n: self.n_qubits,
            });
        }
        if subset.is_empty() {
            return Ok(1.0);
        }
        let mask = subset.mask() as usize;
        let value: Complex64 = self
            .amps
            .iter()
            .enumerate()
            .map(|(b, a)| a.conj() * self.amps[b ^ mask])
            .sum();
        debug_assert!(
            value.im.abs() < 1e-10,
            "parity expectation has imaginary part {}",
            value.im
        );
        Ok(value.re.clamp(-1.0, 1.0))
    }
}

/// `exp(iφ Σ_{(i,j)∈E} σᵢˣσⱼˣ)|0…0⟩`. The edge terms commute, so the
/// product of per-edge rotations is exact.
pub fn evolve_graph_state(g: &Graph, phi: f64) -> Result<StateVector> {
    evolve_graph_state_with_cap(g, phi, DEFAULT_MAX_QUBITS)
}

pub fn evolve_graph_state_with_cap(g: &Graph, phi: f64, max_qubits: usize) -> Result<StateVector> {
    let mut state = StateVector::zero_with_cap(g.n(), max_qubits)?;
    evolve_edges(&mut state, g.edges(), phi);
    Ok(state)
}

pub(crate) fn evolve_edges(state: &mut StateVector, edges: &[(usize, usize)], phi: f64) {
    let mut scratch = Vec::new();
    for &(i, j) in edges {
        state.xor_mix(1 << i | 1 << j, phi, &mut scratch);
    }
}
