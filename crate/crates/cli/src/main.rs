use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use evograph_cli::angle::parse_angle;
use evograph_cli::render;
use evograph_cli::*;
use evograph_core::protocols::{Execution, DEFAULT_SHOTS};
use evograph_core::{GeometryConfig, GraphFormat, NoiseModel, DEFAULT_MAX_QUBITS};

#[derive(Parser)]
#[command(
    name = "evograph",
    version,
    about = "Geometry of evolutionary graph states of Ising spin systems"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write a JSON run record (command, config, results, timestamp).
    #[arg(long, global = true)]
    record: Option<PathBuf>,
    /// Largest graph / statevector accepted.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_QUBITS)]
    max_qubits: usize,
    /// Graph file format: edge-list or json. Guessed from content by default.
    #[arg(long, global = true)]
    graph_format: Option<GraphFormat>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Motif counts, moments and closed-form geometry of a graph.
    Analyze {
        /// Graph file, or `-` for stdin.
        graph: String,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// Parity-operator expansion of Hⁿ.
    Expand {
        graph: String,
        #[arg(long, default_value_t = 2)]
        power: u32,
        /// Lift the n ≤ 4 cap.
        #[arg(long)]
        uncapped: bool,
    },
    /// Return probability |⟨0|U(φ)|0⟩|² over a φ grid (CSV by default).
    Sweep {
        graph: String,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Fit |U|² ≈ b − aφ² to a sweep CSV; `a` estimates m2.
    Fit {
        /// Sweep CSV file, or `-` for stdin.
        csv: String,
    },
    /// Measure moments through correlators, then geometry and motif inversion.
    Reconstruct {
        /// Graph file; not needed with --moments.
        #[arg(required_unless_present = "moments")]
        graph: Option<String>,
        /// Use externally measured moments `m2,m3,m4` instead of simulating.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "graph")]
        moments: Option<String>,
        #[command(flatten)]
        exec: ExecArgs,
        #[command(flatten)]
        geometry: GeometryArgs,
    },
    /// OpenQASM 2.0 for the evolution or a correlator circuit.
    EmitQasm {
        graph: String,
        /// Evolution angle φ = Jt/ħ, e.g. `0.3` or `pi/8`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_angle, group = "target")]
        phi: Option<f64>,
        /// Qubits of the parity correlator, e.g. `0,2`.
        #[arg(long, group = "target")]
        correlator: Option<String>,
    },
    /// Compare the chain, triangle and square cases against reference values.
    Reproduce {
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long, default_value_t = DEFAULT_SHOTS)]
        shots: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        noise_p: f64,
    },
}

#[derive(Args, Serialize)]
struct GeometryArgs {
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    #[arg(long = "J", default_value_t = 1.0)]
    #[serde(rename = "J")]
    j: f64,
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
}

impl GeometryArgs {
    fn config(&self) -> Result<GeometryConfig, CliError> {
        Ok(GeometryConfig::new(self.gamma, self.j, self.hbar)?)
    }
}

#[derive(Args, Serialize)]
struct GridArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle, default_value = "0")]
    phi_start: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle, default_value = "2pi")]
    phi_end: f64,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_angle, default_value = "pi/48")]
    phi_step: f64,
}

#[derive(Args, Serialize)]
struct ExecArgs {
    /// Shots per circuit.
    #[arg(long, conflicts_with = "exact")]
    shots: Option<u64>,
    /// Read expectations off the statevector instead of sampling.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Per-qubit readout flip probability.
    #[arg(long, default_value_t = 0.0)]
    noise_p: f64,
}

impl ExecArgs {
    fn execution(&self, max_qubits: usize) -> Result<Execution, CliError> {
        let exec = if self.exact {
            Execution::exact()
        } else {
            Execution::shots(self.shots.unwrap_or(DEFAULT_SHOTS), self.seed)
        };
        Ok(exec
            .with_noise(NoiseModel::readout(self.noise_p)?)
            .with_max_qubits(max_qubits))
    }
}

/// Rendered output plus whether the geometry came out undefined.
struct Output {
    text: String,
    undefined_geometry: bool,
}

fn json_text(value: &impl Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn unsupported(command: &str, format: &str) -> CliError {
    CliError::input(format!("`{command}` cannot write {format} output"))
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let max = cli.max_qubits;
    let fmt = cli.format;
    let record = |command: &str,
                  config: serde_json::Value,
                  results: serde_json::Value|
     -> Result<(), CliError> {
        if let Some(path) = &cli.record {
            RunRecord::new(command, config, results)?.write(path)?;
        }
        Ok(())
    };
    let out = match &cli.command {
        Command::Analyze { graph, geometry } => {
            let g = load_graph(graph, cli.graph_format, max)?;
            let cfg = geometry.config()?;
            let report = cmd_analyze(&g, &cfg);
            record(
                "analyze",
                json!({ "graph": graph, "geometry": cfg }),
                serde_json::to_value(&report)?,
            )?;
            let text = match fmt.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => json_text(&report)?,
                OutputFormat::Md => render::analyze_md(&report),
                OutputFormat::Csv => return Err(unsupported("analyze", "csv")),
            };
            Output {
                text,
                undefined_geometry: report.geometry_undefined,
            }
        }
        Command::Expand {
            graph,
            power,
            uncapped,
        } => {
            let g = load_graph(graph, cli.graph_format, max)?;
            let e = cmd_expand(&g, *power, *uncapped)?;
            record(
                "expand",
                json!({ "graph": graph, "power": power }),
                serde_json::to_value(&e)?,
            )?;
            let text = match fmt.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => json_text(&e)?,
                OutputFormat::Md => render::expand_md(&e),
                OutputFormat::Csv => return Err(unsupported("expand", "csv")),
            };
            Output {
                text,
                undefined_geometry: false,
            }
        }
        Command::Sweep { graph, grid, exec } => {
            let g = load_graph(graph, cli.graph_format, max)?;
            let execution = exec.execution(max)?;
            let grid_spec = Grid {
                start: grid.phi_start,
                end: grid.phi_end,
                step: grid.phi_step,
            };
            let series = cmd_sweep(&g, &grid_spec, &execution)?;
            record(
                "sweep",
                json!({ "graph": graph, "grid": grid_spec, "execution": execution }),
                serde_json::to_value(&series)?,
            )?;
            let text = match fmt.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => series.to_csv_string(),
                OutputFormat::Json => json_text(&series)?,
                OutputFormat::Md => render::sweep_md(&series),
            };
            Output {
                text,
                undefined_geometry: false,
            }
        }
        Command::Fit { csv } => {
            let series = read_sweep_csv(&read_source(csv)?)?;
            let report = cmd_fit(&series)?;
            record("fit", json!({ "csv": csv }), serde_json::to_value(report)?)?;
            let text = match fmt.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => json_text(&report)?,
                OutputFormat::Md => render::fit_md(&report),
                OutputFormat::Csv => return Err(unsupported("fit", "csv")),
            };
            Output {
                text,
                undefined_geometry: false,
            }
        }
        Command::Reconstruct {
            graph,
            moments,
            exec,
            geometry,
        } => {
            let cfg = geometry.config()?;
            let (result, config) = match (graph, moments) {
                (_, Some(text)) => {
                    let m = parse_moments(text)?;
                    (
                        cmd_reconstruct(MomentSource::Injected(m), &cfg)?,
                        json!({ "moments": m, "geometry": cfg }),
                    )
                }
                (Some(path), None) => {
                    let g = load_graph(path, cli.graph_format, max)?;
                    let execution = exec.execution(max)?;
                    let config = json!({ "graph": path, "execution": execution, "geometry": cfg });
                    (
                        cmd_reconstruct(MomentSource::Graph(&g, execution), &cfg)?,
                        config,
                    )
                }
                (None, None) => {
                    return Err(CliError::input(
                        "reconstruct needs a graph file or --moments",
                    ))
                }
            };
            record("reconstruct", config, serde_json::to_value(&result)?)?;
            if result.inversion.warning {
                eprintln!("warning: inversion residual above 0.25; motif counts are unreliable");
            }
            let text = match fmt.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => json_text(&result)?,
                OutputFormat::Md => render::reconstruct_md(&result),
                OutputFormat::Csv => return Err(unsupported("reconstruct", "csv")),
            };
            Output {
                text,
                undefined_geometry: result.geometry_undefined,
            }
        }
        Command::EmitQasm {
            graph,
            phi,
            correlator,
        } => {
            let g = load_graph(graph, cli.graph_format, max)?;
            let target = match (phi, correlator) {
                (Some(phi), None) => QasmTarget::Evolution { phi: *phi },
                (None, Some(list)) => QasmTarget::Correlator(parse_qubit_list(list)?),
                _ => {
                    return Err(CliError::input(
                        "emit-qasm needs exactly one of --phi or --correlator",
                    ))
                }
            };
            let text = cmd_emit_qasm(&g, &target)?;
            let config = json!({ "graph": graph, "phi": phi, "correlator": correlator });
            record("emit-qasm", config, serde_json::to_value(&text)?)?;
            Output {
                text,
                undefined_geometry: false,
            }
        }
        Command::Reproduce {
            case,
            shots,
            seed,
            noise_p,
        } => {
            let cases = if case == "all" {
                Case::ALL.to_vec()
            } else {
                vec![case.parse::<Case>().map_err(CliError::input)?]
            };
            let report = cmd_reproduce(&cases, *shots, *seed, NoiseModel::readout(*noise_p)?)?;
            let config = json!({ "case": case, "shots": shots, "seed": seed, "noise_p": noise_p });
            record("reproduce", config, serde_json::to_value(&report)?)?;
            let text = match fmt.unwrap_or(OutputFormat::Json) {
                OutputFormat::Json => json_text(&report)?,
                OutputFormat::Md => render::reproduce_md(&report),
                OutputFormat::Csv => render::reproduce_csv(&report),
            };
            Output {
                text,
                undefined_geometry: false,
            }
        }
    };
    Ok(out)
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out.text)?;
        Ok(out.undefined_geometry)
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("error: geometry undefined (graph has no edges)");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
