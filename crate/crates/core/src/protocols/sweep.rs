use std::io;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Execution, Mode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numfmt::format_sig;
use crate::simulator::{evolve_graph_state_with_cap, sample_counts};

/// One `|U|²` measurement. Exact points carry `shots = 0` and `stderr = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub phi: f64,
    pub usq: f64,
    pub shots: u64,
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SweepSeries {
    pub points: Vec<SweepPoint>,
}

impl SweepSeries {
    pub fn phis(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.phi)
    }

    /// CSV with header `phi,usq,shots,stderr`, reals to 12 significant digits.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["phi", "usq", "shots", "stderr"])?;
        for p in &self.points {
            w.write_record([
                format_sig(p.phi, 12),
                format_sig(p.usq, 12),
                p.shots.to_string(),
                format_sig(p.stderr, 12),
            ])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("csv output is utf-8")
    }

    pub fn read_csv<R: io::Read>(input: R) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(input);
        let points = r
            .deserialize()
            .collect::<std::result::Result<Vec<SweepPoint>, _>>()?;
        Ok(SweepSeries { points })
    }
}

fn validate_grid(phis: &[f64]) -> Result<()> {
    if phis.is_empty() {
        return Err(Error::InvalidGrid("no phi values".into()));
    }
    if phis.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidGrid("phi values must be finite".into()));
    }
    if phis.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidGrid(
            "phi values must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// `|U|²(φ) = |⟨0…0|e^{iHφ/J}|0…0⟩|²` at every grid point.
pub fn usq_sweep(g: &Graph, phis: &[f64], exec: &Execution) -> Result<SweepSeries> {
    validate_grid(phis)?;
    if let Mode::Shots { shots: 0, .. } = exec.mode {
        return Err(Error::ZeroShots);
    }
    let points = phis
        .par_iter()
        .enumerate()
        .map(|(k, &phi)| {
            let state = evolve_graph_state_with_cap(g, phi, exec.max_qubits)?;
            Ok(match exec.mode {
                Mode::Exact => SweepPoint {
                    phi,
                    usq: state.vacuum_return_probability(),
                    shots: 0,
                    stderr: 0.0,
                },
                Mode::Shots { shots, seed } => {
                    let counts =
                        sample_counts(&state, shots, seed.wrapping_add(k as u64), exec.noise)?;
                    let usq = counts.frequency(0);
                    SweepPoint {
                        phi,
                        usq,
                        shots,
                        stderr: (usq * (1.0 - usq) / shots as f64).sqrt(),
                    }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSeries { points })
}
