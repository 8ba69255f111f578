use std::fs;
use std::io::Read;

use serde::Serialize;

use evograph_core::circuit::{build_correlator_circuit, build_evolution_circuit, emit_qasm};
use evograph_core::geometry::{analytic_moments, report_from_counts, report_from_moments};
use evograph_core::pauli::{expand_power, expand_power_uncapped};
use evograph_core::protocols::{
    invert_motifs, phi_grid, quadratic_fit, reconstruct_moments, usq_sweep, Execution, FitResult,
    InversionResult, ReconstructionReport, SweepSeries,
};
use evograph_core::{
    Error, GeometryConfig, GeometryReport, Graph, GraphFormat, Moments, MotifCounts, ParitySubset,
    PauliExpansion,
};

use crate::error::CliError;

/// Reads a file, or stdin when `path` is `-`.
pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))
    }
}

/// Parses a graph, sniffing the format when none is given.
pub fn parse_graph(
    source: &str,
    format: Option<GraphFormat>,
    max_vertices: usize,
) -> Result<Graph, CliError> {
    let format = format.unwrap_or_else(|| GraphFormat::sniff(source));
    Ok(Graph::parse_with_limit(source, format, max_vertices)?)
}

pub fn load_graph(
    path: &str,
    format: Option<GraphFormat>,
    max_vertices: usize,
) -> Result<Graph, CliError> {
    parse_graph(&read_source(path)?, format, max_vertices).map_err(|e| CliError {
        source: e.source.context(path.to_string()),
        ..e
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphSummary {
    fn from(g: &Graph) -> Self {
        GraphSummary {
            n: g.n(),
            edges: g.edges().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub graph: GraphSummary,
    pub counts: MotifCounts,
    pub moments: Moments,
    /// `None` when the graph has no edges.
    pub geometry: Option<GeometryReport>,
    pub geometry_undefined: bool,
}

pub fn cmd_analyze(g: &Graph, cfg: &GeometryConfig) -> AnalyzeReport {
    let counts = g.count_motifs();
    let geometry = report_from_counts(counts, cfg).ok();
    AnalyzeReport {
        graph: g.into(),
        counts,
        moments: analytic_moments(counts),
        geometry_undefined: geometry.is_none(),
        geometry,
    }
}

pub fn cmd_expand(g: &Graph, power: u32, uncapped: bool) -> Result<PauliExpansion, CliError> {
    Ok(if uncapped {
        expand_power_uncapped(g, power)?
    } else {
        expand_power(g, power)?
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

pub fn cmd_sweep(g: &Graph, grid: &Grid, exec: &Execution) -> Result<SweepSeries, CliError> {
    let phis = phi_grid(grid.start, grid.end, grid.step)?;
    Ok(usq_sweep(g, &phis, exec)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitReport {
    #[serde(flatten)]
    pub fit: FitResult,
    pub m2_estimate: f64,
}

pub fn cmd_fit(series: &SweepSeries) -> Result<FitReport, CliError> {
    let fit = quadratic_fit(series)?;
    Ok(FitReport {
        fit,
        m2_estimate: fit.m2_estimate(),
    })
}

pub fn read_sweep_csv(source: &str) -> Result<SweepSeries, CliError> {
    Ok(SweepSeries::read_csv(source.as_bytes())?)
}

/// Where reconstructed moments come from.
#[derive(Debug, Clone)]
pub enum MomentSource<'a> {
    Graph(&'a Graph, Execution),
    /// Externally measured moments, for instance from a hardware run.
    Injected(Moments),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReconstructOutput {
    pub moments: Moments,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub protocol: Option<ReconstructionReport>,
    pub geometry: Option<GeometryReport>,
    pub geometry_undefined: bool,
    pub inversion: InversionResult,
}

pub fn cmd_reconstruct(
    source: MomentSource<'_>,
    cfg: &GeometryConfig,
) -> Result<ReconstructOutput, CliError> {
    let (moments, protocol) = match source {
        MomentSource::Graph(g, exec) => {
            let report = reconstruct_moments(g, &exec)?;
            (report.moments, Some(report))
        }
        MomentSource::Injected(m) => (m, None),
    };
    let geometry = report_from_moments(&moments, cfg).ok();
    Ok(ReconstructOutput {
        moments,
        protocol,
        geometry_undefined: geometry.is_none(),
        geometry,
        inversion: invert_motifs(&moments),
    })
}

/// Parses `m2,m3,m4`.
pub fn parse_moments(text: &str) -> Result<Moments, CliError> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::input(format!("--moments `{text}`: {e}")))?;
    match values[..] {
        [m2, m3, m4] if values.iter().all(|v| v.is_finite()) => Ok(Moments { m2, m3, m4 }),
        _ => Err(CliError::input(format!(
            "--moments needs three finite values m2,m3,m4, got `{text}`"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QasmTarget {
    Evolution { phi: f64 },
    Correlator(Vec<usize>),
}

/// Parses `i,j,...` into qubit indices. An empty list is an error.
pub fn parse_qubit_list(text: &str) -> Result<Vec<usize>, CliError> {
    let items: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(Error::EmptySubset.into());
    }
    items
        .iter()
        .map(|s| {
            s.parse::<usize>()
                .map_err(|e| CliError::input(format!("--correlator `{s}`: {e}")))
        })
        .collect()
}

pub fn cmd_emit_qasm(g: &Graph, target: &QasmTarget) -> Result<String, CliError> {
    let circuit = match target {
        QasmTarget::Evolution { phi } => build_evolution_circuit(g, *phi),
        QasmTarget::Correlator(qubits) => {
            if let Some(&q) = qubits.iter().find(|&&q| q >= g.n()) {
                return Err(Error::QubitIndex { qubit: q, n: g.n() }.into());
            }
            let mut sorted = qubits.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedQubit(w[0]).into());
            }
            build_correlator_circuit(g.n(), ParitySubset::from_vertices(sorted))?
        }
    };
    Ok(emit_qasm(&circuit))
}
