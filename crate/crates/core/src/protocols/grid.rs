use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Evenly spaced grid from `start` to `end` inclusive. The span must be a
/// whole number of steps (to within 1e-9 of a step).
pub fn phi_grid(start: f64, end: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && end.is_finite() && step.is_finite()) {
        return Err(Error::InvalidGrid("bounds and step must be finite".into()));
    }
    if step <= 0.0 {
        return Err(Error::InvalidGrid(format!(
            "step must be positive, got {step}"
        )));
    }
    if end < start {
        return Err(Error::InvalidGrid(format!(
            "end {end} is below start {start}"
        )));
    }
    let intervals = (end - start) / step;
    let whole = intervals.round();
    if (intervals - whole).abs() > 1e-9 {
        return Err(Error::InvalidGrid(format!(
            "span {} is not a multiple of step {step}",
            end - start
        )));
    }
    let m = whole as usize;
    if m == 0 {
        return Ok(vec![start]);
    }
    Ok((0..=m)
        .map(|k| (start * (m - k) as f64 + end * k as f64) / m as f64)
        .collect())
}

/// `0 … 2π`, step `π/48` (97 points).
pub fn full_sweep_grid() -> Vec<f64> {
    phi_grid(0.0, 2.0 * PI, PI / 48.0).expect("valid preset")
}

/// `−π/12 … π/12`, step `π/120` (21 points), used for the chain.
pub fn chain_fit_window() -> Vec<f64> {
    phi_grid(-PI / 12.0, PI / 12.0, PI / 120.0).expect("valid preset")
}

/// `−π/24 … π/24`, step `π/240` (21 points), used for triangle and square.
pub fn narrow_fit_window() -> Vec<f64> {
    phi_grid(-PI / 24.0, PI / 24.0, PI / 240.0).expect("valid preset")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let full = full_sweep_grid();
        assert_eq!(full.len(), 97);
        assert_eq!(full[0], 0.0);
        assert_eq!(*full.last().unwrap(), 2.0 * PI);
        let chain = chain_fit_window();
        assert_eq!(chain.len(), 21);
        assert_eq!(chain[10], 0.0);
        assert_eq!(narrow_fit_window().len(), 21);
        assert!(full.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn bad_grids() {
        assert!(phi_grid(0.0, 1.0, 0.0).is_err());
        assert!(phi_grid(0.0, 1.0, -0.1).is_err());
        assert!(phi_grid(1.0, 0.0, 0.1).is_err());
        assert!(phi_grid(0.0, 1.0, 0.3).is_err());
        assert!(phi_grid(0.0, f64::INFINITY, 0.3).is_err());
        assert_eq!(phi_grid(0.5, 0.5, 0.1).unwrap(), vec![0.5]);
    }
}
