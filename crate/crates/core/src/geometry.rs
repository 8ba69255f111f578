//! Velocity, curvature and torsion of evolutionary graph states.
//!
//! For a time-independent Hamiltonian the state moves on projective Hilbert
//! space with constant speed `v = γ√⟨ΔH²⟩/ħ`. Curvature and torsion of that
//! path depend only on the second to fourth moments of the energy:
//!
//! ```text
//! κ̄ = ⟨ΔH⁴⟩/⟨ΔH²⟩² − 1
//! τ̄ = κ̄ − ⟨ΔH³⟩²/⟨ΔH²⟩³
//! ```
//!
//! In the vacuum `|0…0⟩` of an Ising graph Hamiltonian the moments reduce to
//! motif counts: `m₂ = k₂`, `m₃ = 6k₃`, `m₄ = k₂ + 3k₂(k₂−1) + 24k₄`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MotifCounts;
use crate::simulator::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryConfig {
    pub gamma: f64,
    #[serde(rename = "J")]
    pub j: f64,
    pub hbar: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig {
            gamma: 1.0,
            j: 1.0,
            hbar: 1.0,
        }
    }
}

impl GeometryConfig {
    pub fn new(gamma: f64, j: f64, hbar: f64) -> Result<Self> {
        for (name, v) in [("gamma", gamma), ("J", j), ("hbar", hbar)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(GeometryConfig { gamma, j, hbar })
    }
}

/// Energy moments `⟨ΔHⁿ⟩/Jⁿ` for `n = 2, 3, 4`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Moments {
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
}

/// Exact integer moments of the vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct IntegerMoments {
    pub m2: u64,
    pub m3: u64,
    pub m4: u64,
}

impl From<IntegerMoments> for Moments {
    fn from(m: IntegerMoments) -> Self {
        Moments {
            m2: m.m2 as f64,
            m3: m.m3 as f64,
            m4: m.m4 as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryReport {
    pub velocity: f64,
    pub kbar: f64,
    pub tbar: f64,
    pub config: GeometryConfig,
}

pub fn analytic_integer_moments(c: MotifCounts) -> IntegerMoments {
    IntegerMoments {
        m2: c.k2,
        m3: 6 * c.k3,
        m4: c.k2 + 3 * c.k2 * c.k2.saturating_sub(1) + 24 * c.k4,
    }
}

pub fn analytic_moments(c: MotifCounts) -> Moments {
    analytic_integer_moments(c).into()
}

/// `v = γJ√k₂/ħ`.
pub fn velocity(c: MotifCounts, cfg: &GeometryConfig) -> f64 {
    cfg.gamma * cfg.j * (c.k2 as f64).sqrt() / cfg.hbar
}

/// Velocity from a measured second moment; negative estimates count as 0.
pub fn velocity_from_moment(m2: f64, cfg: &GeometryConfig) -> f64 {
    cfg.gamma * cfg.j * m2.max(0.0).sqrt() / cfg.hbar
}

/// `κ̄ = m₄/m₂² − 1`.
pub fn curvature(m: &Moments) -> Result<f64> {
    if m.m2.is_nan() || m.m2 <= 0.0 {
        return Err(Error::UndefinedCurvature { m2: m.m2 });
    }
    Ok(m.m4 / (m.m2 * m.m2) - 1.0)
}

/// `τ̄ = κ̄ − m₃²/m₂³`.
pub fn torsion(m: &Moments) -> Result<f64> {
    Ok(curvature(m)? - m.m3 * m.m3 / (m.m2 * m.m2 * m.m2))
}

pub fn report_from_moments(m: &Moments, cfg: &GeometryConfig) -> Result<GeometryReport> {
    Ok(GeometryReport {
        velocity: velocity_from_moment(m.m2, cfg),
        kbar: curvature(m)?,
        tbar: torsion(m)?,
        config: *cfg,
    })
}

/// Closed-form report straight from motif counts. Fails when `k₂ = 0`.
pub fn report_from_counts(c: MotifCounts, cfg: &GeometryConfig) -> Result<GeometryReport> {
    let m = analytic_moments(c);
    Ok(GeometryReport {
        velocity: velocity(c, cfg),
        kbar: curvature(&m)?,
        tbar: torsion(&m)?,
        config: *cfg,
    })
}

/// `s = γ·arccos|⟨ψ₁|ψ₀⟩|`.
pub fn wootters_distance(
    psi0: &StateVector,
    psi1: &StateVector,
    cfg: &GeometryConfig,
) -> Result<f64> {
    let overlap = psi1.inner(psi0)?.norm();
    Ok(cfg.gamma * overlap.clamp(0.0, 1.0).acos())
}

/// Point `ξ ∈ [0, 1]` on the geodesic from `ψ₀` to `ψ₁`:
///
/// ```text
/// ψ(ξ) = [(1−ξ)ψ₀ + ξ·e^{iθ}ψ₁] / √(1 − 2ξ(1−ξ)(1 − |⟨ψ₁|ψ₀⟩|)),   e^{iθ} = ⟨ψ₁|ψ₀⟩/|⟨ψ₁|ψ₀⟩|
/// ```
///
/// The phase aligns `ψ₁` with `ψ₀`, so the result is `ψ₀` at `ξ = 0` and the
/// phase-aligned `ψ₁` at `ξ = 1`.
pub fn geodesic_interpolate(
    psi0: &StateVector,
    psi1: &StateVector,
    xi: f64,
) -> Result<StateVector> {
    let overlap = psi1.inner(psi0)?;
    let magnitude = overlap.norm();
    if magnitude < 1e-15 {
        return Err(Error::GeodesicUndefined);
    }
    let phase = overlap / magnitude;
    let norm = (1.0 - 2.0 * xi * (1.0 - xi) * (1.0 - magnitude)).sqrt();
    let amps: Vec<Complex64> = psi0
        .amplitudes()
        .iter()
        .zip(psi1.amplitudes())
        .map(|(&a, &b)| (a * (1.0 - xi) + b * phase * xi) / norm)
        .collect();
    StateVector::from_amplitudes(amps)
}
