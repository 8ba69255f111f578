//! Seeded measurement sampling with optional readout bit flips.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use super::StateVector;
use crate::error::{Error, Result};

/// Independent per-qubit readout flips.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct NoiseModel {
    pub readout_flip_prob: f64,
}

impl NoiseModel {
    pub const NONE: NoiseModel = NoiseModel {
        readout_flip_prob: 0.0,
    };

    pub fn readout(p: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) {
            return Err(Error::InvalidProbability(p));
        }
        Ok(NoiseModel {
            readout_flip_prob: p,
        })
    }

    pub fn is_noiseless(&self) -> bool {
        self.readout_flip_prob == 0.0
    }
}

/// Outcome histogram keyed by basis index (bit `q` = qubit `q`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotCounts {
    n_qubits: usize,
    shots: u64,
    counts: BTreeMap<u64, u64>,
}

impl ShotCounts {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn get(&self, outcome: u64) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    /// Outcome as text with qubit `n−1` leftmost.
    pub fn bitstring(&self, outcome: u64) -> String {
        (0..self.n_qubits)
            .rev()
            .map(|q| if outcome >> q & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn to_bitstring_map(&self) -> BTreeMap<String, u64> {
        self.iter().map(|(k, v)| (self.bitstring(k), v)).collect()
    }

    pub fn frequency(&self, outcome: u64) -> f64 {
        self.get(outcome) as f64 / self.shots as f64
    }

    /// Mean of `(−1)^{popcount(outcome & mask)}` over all shots.
    pub fn parity_mean(&self, mask: u64) -> f64 {
        let signed: i64 = self
            .iter()
            .map(|(k, v)| {
                if (k & mask).count_ones().is_multiple_of(2) {
                    v as i64
                } else {
                    -(v as i64)
                }
            })
            .sum();
        signed as f64 / self.shots as f64
    }
}

/// Draws `shots` outcomes from `|amp|²` and applies readout flips.
///
/// The multinomial is drawn as a chain of conditional binomials over basis
/// indices in ascending order; flips are then drawn shot by shot, qubit by
/// qubit. Everything comes from one ChaCha8 stream seeded with `seed`.
pub fn sample_counts(
    state: &StateVector,
    shots: u64,
    seed: u64,
    noise: NoiseModel,
) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probs = state.probabilities();
    let total: f64 = probs.iter().sum();
    let last = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);

    let mut ideal = BTreeMap::new();
    let mut remaining = shots;
    let mut mass_left = total;
    for (index, &p) in probs.iter().enumerate().take(last + 1) {
        if remaining == 0 {
            break;
        }
        if p <= 0.0 {
            continue;
        }
        let k = if index == last {
            remaining
        } else {
            let q = (p / mass_left).clamp(0.0, 1.0);
            Binomial::new(remaining, q)
                .expect("valid binomial")
                .sample(&mut rng)
        };
        mass_left -= p;
        if k > 0 {
            ideal.insert(index as u64, k);
            remaining -= k;
        }
    }

    let counts = if noise.is_noiseless() {
        ideal
    } else {
        let p = noise.readout_flip_prob;
        let mut noisy = BTreeMap::new();
        for (outcome, k) in ideal {
            for _ in 0..k {
                let mut flipped = outcome;
                for q in 0..state.n_qubits() {
                    if rng.random_bool(p) {
                        flipped ^= 1 << q;
                    }
                }
                *noisy.entry(flipped).or_insert(0) += 1;
            }
        }
        noisy
    };
    Ok(ShotCounts {
        n_qubits: state.n_qubits(),
        shots,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::Gate;

    #[test]
    fn vacuum_without_noise() {
        let s = StateVector::zero(3).unwrap();
        let counts = sample_counts(&s, 1000, 7, NoiseModel::NONE).unwrap();
        assert_eq!(counts.get(0), 1000);
        assert_eq!(
            counts.to_bitstring_map(),
            BTreeMap::from([("000".to_string(), 1000)])
        );
    }

    #[test]
    fn zero_shots_rejected() {
        let s = StateVector::zero(1).unwrap();
        assert!(matches!(
            sample_counts(&s, 0, 1, NoiseModel::NONE),
            Err(Error::ZeroShots)
        ));
    }

    #[test]
    fn noise_bounds() {
        assert!(NoiseModel::readout(0.6).is_err());
        assert!(NoiseModel::readout(-0.1).is_err());
        assert!(NoiseModel::readout(0.5).is_ok());
    }

    #[test]
    fn half_flip_is_a_fair_coin() {
        let s = StateVector::zero(1).unwrap();
        let n = 200_000;
        let counts = sample_counts(&s, n, 3, NoiseModel::readout(0.5).unwrap()).unwrap();
        let sigma = (0.25 / n as f64).sqrt();
        assert!((counts.frequency(0) - 0.5).abs() < 5.0 * sigma);
        assert_eq!(counts.get(0) + counts.get(1), n);
    }

    #[test]
    fn uniform_superposition_within_five_sigma() {
        let mut s = StateVector::zero(3).unwrap();
        for q in 0..3 {
            s.apply(Gate::H(q)).unwrap();
        }
        let n = 100_000u64;
        let counts = sample_counts(&s, n, 11, NoiseModel::NONE).unwrap();
        let p = 1.0 / 8.0;
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        for outcome in 0..8 {
            assert!(
                (counts.frequency(outcome) - p).abs() < 5.0 * sigma,
                "outcome {outcome}"
            );
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut s = StateVector::zero(4).unwrap();
        for q in 0..4 {
            s.apply(Gate::RY(q, 0.3 + q as f64)).unwrap();
        }
        let noise = NoiseModel::readout(0.05).unwrap();
        let a = sample_counts(&s, 5000, 42, noise).unwrap();
        let b = sample_counts(&s, 5000, 42, noise).unwrap();
        let c = sample_counts(&s, 5000, 43, noise).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.iter().map(|(_, v)| v).sum::<u64>(), 5000);
    }

    #[test]
    fn parity_mean_and_bitstrings() {
        let mut s = StateVector::zero(2).unwrap();
        s.apply(Gate::X(0)).unwrap();
        let counts = sample_counts(&s, 10, 1, NoiseModel::NONE).unwrap();
        assert_eq!(counts.bitstring(1), "01");
        assert_eq!(counts.parity_mean(0b01), -1.0);
        assert_eq!(counts.parity_mean(0b10), 1.0);
        assert_eq!(counts.parity_mean(0b11), -1.0);
    }
}
