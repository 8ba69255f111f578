use serde::Serialize;

use super::SweepSeries;
use crate::error::{Error, Result};

pub const MIN_FIT_POINTS: usize = 3;

/// Least-squares fit of `usq ≈ −a·φ² + b`. For small `φ`,
/// `|U|² ≈ 1 − ⟨ΔH²⟩φ²/J²`, so `a` estimates `m₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    pub a: f64,
    pub b: f64,
    pub rms_residual: f64,
    pub points: usize,
}

impl FitResult {
    pub fn m2_estimate(&self) -> f64 {
        self.a
    }
}

pub fn quadratic_fit(series: &SweepSeries) -> Result<FitResult> {
    let points: Vec<(f64, f64)> = series.points.iter().map(|p| (p.phi, p.usq)).collect();
    quadratic_fit_points(&points)
}

/// Fits `(φ, y)` pairs through the 2×2 normal equations of the design
/// `[φ², 1]`.
pub fn quadratic_fit_points(points: &[(f64, f64)]) -> Result<FitResult> {
    if points.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewPoints {
            got: points.len(),
            need: MIN_FIT_POINTS,
        });
    }
    let n = points.len() as f64;
    let (mut sx, mut sxx, mut sy, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(phi, y) in points {
        let x = phi * phi;
        sx += x;
        sxx += x * x;
        sy += y;
        sxy += x * y;
    }
    // | sxx sx | |slope|   |sxy|
    // | sx  n  | |  b  | = |sy |
    let det = n * sxx - sx * sx;
    if det.is_nan() || det <= 1e-12 * n * sxx {
        return Err(Error::SingularFit);
    }
    let slope = (n * sxy - sx * sy) / det;
    let b = (sxx * sy - sx * sxy) / det;
    let sse: f64 = points
        .iter()
        .map(|&(phi, y)| {
            let r = y - (slope * phi * phi + b);
            r * r
        })
        .sum();
    Ok(FitResult {
        a: -slope,
        b,
        rms_residual: (sse / n).sqrt(),
        points: points.len(),
    })
}
