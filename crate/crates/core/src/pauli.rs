//! Expansion of Ising Hamiltonian powers into σˣ-parity operators.
//!
//! With `H = J Σ_{(i,j)∈E} σᵢˣσⱼˣ` every product of edge terms is itself a
//! product of σˣ on the vertices that occur an odd number of times, with
//! coefficient `+1`: σˣ operators commute and square to the identity. So
//! `Hⁿ/Jⁿ = Σ_S c(S) ∏_{v∈S} σᵥˣ` where `c(S)` counts the ordered edge
//! `n`-tuples whose odd-degree vertex set is `S`. Subsets are bit masks and
//! multiplication by an edge is XOR with its two-bit mask.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Powers above this need [`expand_power_uncapped`].
pub const DEFAULT_MAX_POWER: u32 = 4;

/// A set of vertices, stored as a bit mask (vertex `v` ↔ bit `v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ParitySubset(pub u64);

impl ParitySubset {
    pub const EMPTY: ParitySubset = ParitySubset(0);

    pub fn from_vertices(vertices: impl IntoIterator<Item = usize>) -> Self {
        ParitySubset(vertices.into_iter().fold(0, |m, v| m | 1 << v))
    }

    pub fn edge(i: usize, j: usize) -> Self {
        ParitySubset(1 << i | 1 << j)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    /// Vertices in ascending order.
    pub fn vertices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                v
            })
        })
    }

    /// Largest index plus one, 0 for the empty set.
    pub fn span(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Key used in JSON dumps: ascending indices joined by commas, `""` for ∅.
    pub fn key(self) -> String {
        self.vertices()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`ParitySubset::key`]; also accepts whitespace around indices.
    pub fn parse_key(key: &str) -> Option<Self> {
        if key.trim().is_empty() {
            return Some(Self::EMPTY);
        }
        let mut mask = 0u64;
        for part in key.split(',') {
            let v: usize = part.trim().parse().ok()?;
            if v >= 64 {
                return None;
            }
            mask |= 1 << v;
        }
        Some(ParitySubset(mask))
    }
}

impl fmt::Display for ParitySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("I");
        }
        for v in self.vertices() {
            write!(f, "X{v}")?;
        }
        Ok(())
    }
}

/// `Hⁿ/Jⁿ` as a map from parity subsets to positive integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliExpansion {
    power: u32,
    terms: BTreeMap<ParitySubset, u64>,
}

impl PauliExpansion {
    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn terms(&self) -> &BTreeMap<ParitySubset, u64> {
        &self.terms
    }

    pub fn coefficient(&self, subset: ParitySubset) -> u64 {
        self.terms.get(&subset).copied().unwrap_or(0)
    }

    /// Coefficient of the identity, i.e. `⟨0…0|Hⁿ|0…0⟩/Jⁿ`.
    pub fn identity_coefficient(&self) -> u64 {
        self.coefficient(ParitySubset::EMPTY)
    }

    /// Non-identity subsets in ascending mask order.
    pub fn correlators(&self) -> impl Iterator<Item = (ParitySubset, u64)> + '_ {
        self.terms
            .iter()
            .filter(|(s, _)| !s.is_empty())
            .map(|(&s, &c)| (s, c))
    }

    pub fn coefficient_sum(&self) -> u128 {
        self.terms.values().map(|&c| c as u128).sum()
    }

    /// Evaluates `Σ c(S)·f(S)` for per-subset expectation values `f`.
    pub fn evaluate(&self, mut expectation: impl FnMut(ParitySubset) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(&s, &c)| c as f64 * expectation(s))
            .sum()
    }

    fn identity() -> Self {
        PauliExpansion {
            power: 0,
            terms: BTreeMap::from([(ParitySubset::EMPTY, 1)]),
        }
    }

    /// Right-multiplies by `H/J`.
    fn times_hamiltonian(&self, edge_masks: &[u64]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (&subset, &coeff) in &self.terms {
            for &edge in edge_masks {
                let slot = terms.entry(ParitySubset(subset.0 ^ edge)).or_insert(0u64);
                *slot = slot.checked_add(coeff).ok_or(Error::CoefficientOverflow)?;
            }
        }
        Ok(PauliExpansion {
            power: self.power + 1,
            terms,
        })
    }
}

/// Serialized as its [`ParitySubset::key`], so subsets work as JSON map keys.
impl Serialize for ParitySubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.key())
    }
}

impl Serialize for PauliExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (subset, coeff) in &self.terms {
            map.serialize_entry(&subset.key(), coeff)?;
        }
        map.end()
    }
}

/// Expands `Hⁿ/Jⁿ` for `n ≤ 4`.
pub fn expand_power(g: &Graph, n: u32) -> Result<PauliExpansion> {
    if n > DEFAULT_MAX_POWER {
        return Err(Error::PowerCap {
            n,
            max: DEFAULT_MAX_POWER,
        });
    }
    expand_power_uncapped(g, n)
}

/// Expands `Hⁿ/Jⁿ` for any `n`. Cost grows as `n · |subsets| · k₂`, and the
/// coefficient sum is `k₂ⁿ`, so large powers overflow.
pub fn expand_power_uncapped(g: &Graph, n: u32) -> Result<PauliExpansion> {
    Ok(expand_powers_uncapped(g, n)?
        .pop()
        .expect("power 0 is always present"))
}

/// All expansions `H⁰ … Hⁿ`, sharing the intermediate products.
pub fn expand_powers(g: &Graph, max_power: u32) -> Result<Vec<PauliExpansion>> {
    if max_power > DEFAULT_MAX_POWER {
        return Err(Error::PowerCap {
            n: max_power,
            max: DEFAULT_MAX_POWER,
        });
    }
    expand_powers_uncapped(g, max_power)
}

fn expand_powers_uncapped(g: &Graph, max_power: u32) -> Result<Vec<PauliExpansion>> {
    let edge_masks: Vec<u64> = g.edges().iter().map(|&(i, j)| 1 << i | 1 << j).collect();
    let mut out = vec![PauliExpansion::identity()];
    for _ in 0..max_power {
        let next = out
            .last()
            .expect("non-empty")
            .times_hamiltonian(&edge_masks)?;
        out.push(next);
    }
    Ok(out)
}

/// `⟨0…0|Hⁿ|0…0⟩/Jⁿ`: the number of ordered edge `n`-tuples in which every
/// vertex is touched an even number of times.
pub fn vacuum_moment(g: &Graph, n: u32) -> Result<u64> {
    Ok(expand_power(g, n)?.identity_coefficient())
}
