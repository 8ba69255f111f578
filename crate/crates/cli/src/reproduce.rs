//! Side-by-side comparison of the three worked cases (chain, triangle,
//! square) against reference theoretical and hardware numbers.
//!
//! The hardware numbers came from a noisy five-qubit device. They are shown
//! for reference only; nothing here asserts against them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use evograph_core::geometry::{analytic_moments, report_from_counts, report_from_moments};
use evograph_core::protocols::{
    chain_fit_window, invert_motifs, narrow_fit_window, quadratic_fit, reconstruct_moments,
    usq_sweep, Execution,
};
use evograph_core::{GeometryConfig, Graph, NoiseModel};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Chain,
    Triangle,
    Square,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::Chain, Case::Triangle, Case::Square];

    pub fn name(self) -> &'static str {
        match self {
            Case::Chain => "chain",
            Case::Triangle => "triangle",
            Case::Square => "square",
        }
    }

    pub fn graph(self) -> Graph {
        match self {
            Case::Chain => Graph::chain(3),
            Case::Triangle => Graph::cycle(3),
            Case::Square => Graph::cycle(4),
        }
        .expect("preset graphs are valid")
    }

    /// The φ window used for the quadratic fit.
    pub fn fit_window(self) -> Vec<f64> {
        match self {
            Case::Chain => chain_fit_window(),
            Case::Triangle | Case::Square => narrow_fit_window(),
        }
    }

    fn hardware(self) -> &'static HardwareValues {
        match self {
            Case::Chain => &CHAIN_HW,
            Case::Triangle => &TRIANGLE_HW,
            Case::Square => &SQUARE_HW,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chain" => Ok(Case::Chain),
            "triangle" => Ok(Case::Triangle),
            "square" => Ok(Case::Square),
            other => Err(format!(
                "unknown case `{other}` (chain, triangle, square, all)"
            )),
        }
    }
}

/// Reference values measured on ibmq_manila. `m2` is the correlator-route
/// estimate; the fit coefficients come from the separate |U|² sweep.
struct HardwareValues {
    m2: f64,
    m3: f64,
    m4: f64,
    kbar: f64,
    tbar: f64,
    fit_a: f64,
    fit_b: f64,
    source: &'static str,
}

const CHAIN_HW: HardwareValues = HardwareValues {
    m2: 1.98,
    m3: -0.013,
    m4: 7.92,
    kbar: 1.02,
    tbar: 1.02,
    fit_a: 1.67,
    fit_b: 0.94,
    source: "ibmq_manila, three-qubit chain run",
};

const TRIANGLE_HW: HardwareValues = HardwareValues {
    m2: 2.95,
    m3: 5.83,
    m4: 20.5,
    kbar: 1.33,
    tbar: 0.031,
    fit_a: 2.74,
    fit_b: 0.89,
    source: "ibmq_manila, triangle run",
};

const SQUARE_HW: HardwareValues = HardwareValues {
    m2: 3.77,
    m3: 1.39,
    m4: 60.32,
    kbar: 3.24,
    tbar: 3.21,
    fit_a: 3.63,
    fit_b: 0.87,
    source: "ibmq_manila, square run",
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproduceRow {
    pub quantity: &'static str,
    pub theoretical: f64,
    pub hardware_reference: Option<f64>,
    pub artifact_exact: f64,
    pub artifact_sampled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseTable {
    pub case: Case,
    pub hardware_source: &'static str,
    pub rows: Vec<ReproduceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReproduceReport {
    pub shots: u64,
    pub seed: u64,
    pub noise: NoiseModel,
    pub cases: Vec<CaseTable>,
}

/// Every quantity the table reports for one evaluation route.
struct Column {
    m2: f64,
    m3: f64,
    m4: f64,
    kbar: f64,
    tbar: f64,
    fit_a: f64,
    fit_b: f64,
    k2: f64,
    k3: f64,
    k4: f64,
}

fn evaluate(g: &Graph, window: &[f64], exec: &Execution) -> Result<Column, CliError> {
    let cfg = GeometryConfig::default();
    let m = reconstruct_moments(g, exec)?.moments;
    let geo = report_from_moments(&m, &cfg)?;
    let fit = quadratic_fit(&usq_sweep(g, window, exec)?)?;
    let k = invert_motifs(&m).counts;
    Ok(Column {
        m2: m.m2,
        m3: m.m3,
        m4: m.m4,
        kbar: geo.kbar,
        tbar: geo.tbar,
        fit_a: fit.a,
        fit_b: fit.b,
        k2: k.k2 as f64,
        k3: k.k3 as f64,
        k4: k.k4 as f64,
    })
}

fn case_table(case: Case, sampled: &Execution) -> Result<CaseTable, CliError> {
    let g = case.graph();
    let counts = g.count_motifs();
    let theory_m = analytic_moments(counts);
    let theory_geo = report_from_counts(counts, &GeometryConfig::default())?;
    let window = case.fit_window();
    let exact = evaluate(&g, &window, &Execution::exact())?;
    let sampled = evaluate(&g, &window, sampled)?;
    let hw = case.hardware();

    let row =
        |quantity, theory: f64, hardware: Option<f64>, pick: fn(&Column) -> f64| ReproduceRow {
            quantity,
            theoretical: theory,
            hardware_reference: hardware,
            artifact_exact: pick(&exact),
            artifact_sampled: pick(&sampled),
        };
    let rows = vec![
        row("m2", theory_m.m2, Some(hw.m2), |c| c.m2),
        row("m3", theory_m.m3, Some(hw.m3), |c| c.m3),
        row("m4", theory_m.m4, Some(hw.m4), |c| c.m4),
        row("kbar", theory_geo.kbar, Some(hw.kbar), |c| c.kbar),
        row("tbar", theory_geo.tbar, Some(hw.tbar), |c| c.tbar),
        row("fit a", counts.k2 as f64, Some(hw.fit_a), |c| c.fit_a),
        row("fit b", 1.0, Some(hw.fit_b), |c| c.fit_b),
        row("k2", counts.k2 as f64, None, |c| c.k2),
        row("k3", counts.k3 as f64, None, |c| c.k3),
        row("k4", counts.k4 as f64, None, |c| c.k4),
    ];
    Ok(CaseTable {
        case,
        hardware_source: hw.source,
        rows,
    })
}

pub fn cmd_reproduce(
    cases: &[Case],
    shots: u64,
    seed: u64,
    noise: NoiseModel,
) -> Result<ReproduceReport, CliError> {
    let sampled = Execution::shots(shots, seed).with_noise(noise);
    let cases = cases
        .iter()
        .map(|&c| case_table(c, &sampled))
        .collect::<Result<_, _>>()?;
    Ok(ReproduceReport {
        shots,
        seed,
        noise,
        cases,
    })
}
