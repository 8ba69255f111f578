//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use evograph_cli::render::reproduce_md;
use evograph_cli::{cmd_analyze, cmd_reconstruct, cmd_reproduce, load_graph, Case, MomentSource};
use evograph_core::circuit::{build_evolution_circuit, run_circuit};
use evograph_core::geometry::analytic_integer_moments;
use evograph_core::pauli::vacuum_moment;
use evograph_core::protocols::{
    chain_fit_window, full_sweep_grid, invert_motifs, narrow_fit_window, quadratic_fit, usq_sweep,
    Execution,
};
use evograph_core::simulator::evolve_graph_state;
use evograph_core::{
    GeometryConfig, Graph, Moments, MotifCounts, NoiseModel, DEFAULT_MAX_VERTICES,
};

const CLOSED_FORM_TOL: f64 = 1e-12;
const FIT_EXACT_REL: f64 = 0.02;
const FIT_SAMPLED_REL: f64 = 0.10;
const FIT_SAMPLED_SEEDS: u64 = 100;
const FIT_SAMPLED_MIN_PASS: usize = 95;
const SHOTS_8192: u64 = 8192;
const RECOVERY_SHOTS: u64 = 100_000;
const RECOVERY_GRAPHS: usize = 20;
const RECOVERY_SEEDS_PER_GRAPH: u64 = 10;
const RECOVERY_MIN_RATE: f64 = 0.95;
const MOMENT_BUDGET: Duration = Duration::from_secs(30);
const SWEEP_POINT_BUDGET: Duration = Duration::from_secs(5);

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn graph_file(name: &str) -> String {
    format!("{}/../../graphs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cases() -> [(&'static str, Graph); 3] {
    [
        ("chain", Graph::chain(3).unwrap()),
        ("triangle", Graph::cycle(3).unwrap()),
        ("square", Graph::cycle(4).unwrap()),
    ]
}

fn closed_form_geometry() -> Verdict {
    let cfg = GeometryConfig::default();
    let expected = [
        ("chain.txt", 1.0, 1.0),
        ("triangle.txt", 4.0 / 3.0, 0.0),
        ("square.txt", 3.0, 3.0),
    ];
    let mut worst: f64 = 0.0;
    for (file, kbar, tbar) in expected {
        let g = load_graph(&graph_file(file), None, DEFAULT_MAX_VERTICES).unwrap();
        let geo = cmd_analyze(&g, &cfg).geometry.expect("graph has edges");
        worst = worst
            .max((geo.kbar - kbar).abs())
            .max((geo.tbar - tbar).abs());
    }
    verdict(
        worst <= CLOSED_FORM_TOL,
        format!("max |error| = {worst:.2e} (tol {CLOSED_FORM_TOL:e})"),
    )
}

fn moment_formulas() -> Verdict {
    let start = Instant::now();
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let mut mismatches = 0;
    for mask in 0u32..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::new(5, edges).unwrap();
        let want = analytic_integer_moments(g.count_motifs());
        let got = [2, 3, 4].map(|n| vacuum_moment(&g, n).unwrap());
        if got != [want.m2, want.m3, want.m4] {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    verdict(
        mismatches == 0 && elapsed < MOMENT_BUDGET,
        format!(
            "1024 graphs, {mismatches} mismatches, {:.2} s (budget 30 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn sweep_closed_forms() -> Verdict {
    let curves: [fn(f64) -> f64; 3] = [
        |p| p.cos().powi(4),
        |p| p.cos().powi(6) + p.sin().powi(6),
        |p| (p.cos().powi(4) + p.sin().powi(4)).powi(2),
    ];
    let grid = full_sweep_grid();
    let mut worst: f64 = 0.0;
    for ((_, g), curve) in cases().iter().zip(curves) {
        let series = usq_sweep(g, &grid, &Execution::exact()).unwrap();
        for p in &series.points {
            worst = worst.max((p.usq - curve(p.phi)).abs());
        }
    }
    verdict(
        grid.len() == 97 && worst <= CLOSED_FORM_TOL,
        format!(
            "{} points per case, max |error| = {worst:.2e} (tol {CLOSED_FORM_TOL:e})",
            grid.len()
        ),
    )
}

fn fit_recovery() -> Verdict {
    let windows = [chain_fit_window(), narrow_fit_window(), narrow_fit_window()];
    let mut exact_ok = true;
    let mut exact_detail = Vec::new();
    let mut sampled_detail = Vec::new();
    let mut sampled_ok = true;
    for ((name, g), window) in cases().iter().zip(&windows) {
        let k2 = g.edge_count() as f64;
        let a = quadratic_fit(&usq_sweep(g, window, &Execution::exact()).unwrap())
            .unwrap()
            .a;
        let rel = (a - k2).abs() / k2;
        exact_ok &= rel <= FIT_EXACT_REL;
        exact_detail.push(format!("{name} a={a:.4} ({:+.1}%)", 100.0 * (a - k2) / k2));

        let hits = (0..FIT_SAMPLED_SEEDS)
            .filter(|s| {
                let exec = Execution::shots(SHOTS_8192, s * 1000);
                let a = quadratic_fit(&usq_sweep(g, window, &exec).unwrap())
                    .unwrap()
                    .a;
                (a - k2).abs() / k2 <= FIT_SAMPLED_REL
            })
            .count();
        sampled_ok &= hits >= FIT_SAMPLED_MIN_PASS;
        sampled_detail.push(format!("{name} {hits}/{FIT_SAMPLED_SEEDS}"));
    }
    verdict(
        exact_ok && sampled_ok,
        format!(
            "exact within 2%: {} [{}]; sampled within 10% on >=95/100 seeds: {} [{}]",
            if exact_ok { "yes" } else { "NO" },
            exact_detail.join(", "),
            if sampled_ok { "yes" } else { "NO" },
            sampled_detail.join(", "),
        ),
    )
}

fn inversion_on_hardware_values() -> Verdict {
    let c = |k2, k3, k4| MotifCounts { k2, k3, k4 };
    let cases = [
        ((1.98, -0.013, 7.92), c(2, 0, 0)),
        ((2.95, 5.83, 20.5), c(3, 1, 0)),
        ((3.77, 1.39, 60.32), c(4, 0, 1)),
    ];
    let mut got = Vec::new();
    let mut pass = true;
    for ((m2, m3, m4), want) in cases {
        let k = invert_motifs(&Moments { m2, m3, m4 }).counts;
        pass &= k == want;
        got.push(format!("({},{},{})", k.k2, k.k3, k.k4));
    }
    verdict(pass, got.join(" "))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::new(n, edges).unwrap()
}

fn circuit_equivalence() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(2..=6);
        let g = random_graph(&mut rng, n, 0.5);
        let phi = rng.random_range(-PI..PI);
        let direct = evolve_graph_state(&g, phi).unwrap().amplitudes()[0].norm_sqr();
        let circuit = run_circuit(&build_evolution_circuit(&g, phi)).unwrap();
        let via_circuit = circuit.state.amplitudes()[0].norm_sqr();
        worst = worst.max((direct - via_circuit).abs());
    }
    verdict(
        worst <= CLOSED_FORM_TOL,
        format!("50 pairs, max |error| = {worst:.2e} (tol {CLOSED_FORM_TOL:e})"),
    )
}

fn statistical_recovery() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs = Vec::new();
    while graphs.len() < RECOVERY_GRAPHS {
        let n = rng.random_range(3..=6);
        let g = random_graph(&mut rng, n, 0.5);
        if g.is_connected() {
            graphs.push(g);
        }
    }
    let cfg = GeometryConfig::default();
    let mut hits = 0;
    let mut misses = Vec::new();
    for (idx, g) in graphs.iter().enumerate() {
        let truth = g.count_motifs();
        for s in 0..RECOVERY_SEEDS_PER_GRAPH {
            let exec = Execution::shots(RECOVERY_SHOTS, 1_000_000 * idx as u64 + 1000 * s);
            let out = cmd_reconstruct(MomentSource::Graph(g, exec), &cfg).unwrap();
            if out.inversion.counts == truth {
                hits += 1;
            } else {
                misses.push(format!("g{idx}(k={},{},{})", truth.k2, truth.k3, truth.k4));
            }
        }
    }
    let total = graphs.len() * RECOVERY_SEEDS_PER_GRAPH as usize;
    let rate = hits as f64 / total as f64;
    misses.dedup();
    let miss_note = if misses.is_empty() {
        String::new()
    } else {
        format!("; misses on {}", misses.join(" "))
    };
    verdict(
        rate >= RECOVERY_MIN_RATE,
        format!(
            "{hits}/{total} runs recovered ({:.1}%, need 95%){miss_note}",
            100.0 * rate
        ),
    )
}

fn hardware_displayed_not_asserted() -> Verdict {
    let report = cmd_reproduce(&Case::ALL, SHOTS_8192, 1, NoiseModel::NONE).unwrap();
    let md = reproduce_md(&report);
    let shown = ["1.67", "1.02", "0.031", "3.24", "60.32"]
        .iter()
        .all(|v| md.contains(v));
    let every_row_has_columns = report
        .cases
        .iter()
        .all(|c| c.rows.iter().all(|r| r.artifact_exact.is_finite()));
    verdict(
        shown && every_row_has_columns,
        "reference hardware values shown beside artifact columns",
    )
}

fn sweep_point_performance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = random_graph(&mut rng, 20, 0.3);
    let start = Instant::now();
    let series = usq_sweep(&g, &[0.37], &Execution::exact()).unwrap();
    let elapsed = start.elapsed();
    verdict(
        elapsed < SWEEP_POINT_BUDGET && series.points.len() == 1,
        format!(
            "20 qubits, {} edges, {:.3} s (budget 5 s)",
            g.edge_count(),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("closed-form geometry", closed_form_geometry),
        ("moment formulas vs oracle", moment_formulas),
        ("sweep closed forms", sweep_closed_forms),
        ("fit recovery", fit_recovery),
        ("inversion on hardware values", inversion_on_hardware_values),
        ("circuit equivalence", circuit_equivalence),
        ("end-to-end statistical recovery", statistical_recovery),
        (
            "hardware figures displayed, not asserted",
            hardware_displayed_not_asserted,
        ),
        ("20-qubit sweep point performance", sweep_point_performance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        if !v.pass {
            failed += 1;
        }
        println!(
            "criterion {}: {} - {name}: {}",
            i + 1,
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
