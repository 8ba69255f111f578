use serde::Serialize;

use crate::geometry::Moments;
use crate::graph::MotifCounts;

/// Distance from the nearest integer above which an inversion is flagged.
pub const RESIDUAL_WARNING: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InversionResult {
    pub counts: MotifCounts,
    /// `|x − round(x)|` for the pre-rounding `k₂`, `k₃`, `k₄` estimates.
    pub residuals: [f64; 3],
    pub warning: bool,
}

fn round_nonneg(x: f64) -> (u64, f64) {
    let r = x.round();
    ((r.max(0.0)) as u64, (x - r).abs())
}

/// Rounds measured moments back to motif counts:
/// `k₂ = [m₂]`, `k₃ = [m₃/6]`, `k₄ = [(m₄ − k₂ − 3k₂(k₂−1))/24]`.
pub fn invert_motifs(m: &Moments) -> InversionResult {
    let (k2, r2) = round_nonneg(m.m2);
    let (k3, r3) = round_nonneg(m.m3 / 6.0);
    let k2f = k2 as f64;
    let (k4, r4) = round_nonneg((m.m4 - k2f - 3.0 * k2f * (k2f - 1.0)) / 24.0);
    let residuals = [r2, r3, r4];
    InversionResult {
        counts: MotifCounts { k2, k3, k4 },
        residuals,
        warning: residuals.iter().any(|&r| r > RESIDUAL_WARNING),
    }
}
