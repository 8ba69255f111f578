//! Markdown renderings. JSON output goes straight through serde.

use std::fmt::Write;

use evograph_core::numfmt::format_sig;
use evograph_core::protocols::SweepSeries;
use evograph_core::PauliExpansion;

use crate::commands::{AnalyzeReport, FitReport, ReconstructOutput};
use crate::reproduce::ReproduceReport;

fn num(x: f64) -> String {
    format_sig(x, 6)
}

fn table(out: &mut String, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in rows {
        let _ = writeln!(out, "| {} |", row.join(" | "));
    }
}

fn geometry_rows(geo: Option<&evograph_core::GeometryReport>) -> Vec<Vec<String>> {
    match geo {
        Some(g) => vec![
            vec!["v".into(), num(g.velocity)],
            vec!["kbar".into(), num(g.kbar)],
            vec!["tbar".into(), num(g.tbar)],
        ],
        None => vec![vec!["geometry".into(), "undefined (no edges)".into()]],
    }
}

pub fn analyze_md(r: &AnalyzeReport) -> String {
    let mut out = format!(
        "## Graph: n = {}, {} edges\n\n",
        r.graph.n,
        r.graph.edges.len()
    );
    let mut rows = vec![
        vec!["k2".into(), r.counts.k2.to_string()],
        vec!["k3".into(), r.counts.k3.to_string()],
        vec!["k4".into(), r.counts.k4.to_string()],
        vec!["m2".into(), num(r.moments.m2)],
        vec!["m3".into(), num(r.moments.m3)],
        vec!["m4".into(), num(r.moments.m4)],
    ];
    rows.extend(geometry_rows(r.geometry.as_ref()));
    table(&mut out, &["quantity", "value"], rows);
    out
}

pub fn reconstruct_md(r: &ReconstructOutput) -> String {
    let mut out = String::from("## Reconstruction\n\n");
    let err = r.protocol.as_ref().map(|p| p.moment_stderr);
    let mut rows: Vec<Vec<String>> = [
        ("m2", r.moments.m2, err.map(|e| e.m2)),
        ("m3", r.moments.m3, err.map(|e| e.m3)),
        ("m4", r.moments.m4, err.map(|e| e.m4)),
    ]
    .into_iter()
    .map(|(q, v, e)| vec![q.into(), num(v), e.map(num).unwrap_or_else(|| "-".into())])
    .collect();
    rows.extend(
        geometry_rows(r.geometry.as_ref())
            .into_iter()
            .map(|mut row| {
                row.push("-".into());
                row
            }),
    );
    let c = r.inversion.counts;
    for (q, k, res) in [
        ("k2", c.k2, r.inversion.residuals[0]),
        ("k3", c.k3, r.inversion.residuals[1]),
        ("k4", c.k4, r.inversion.residuals[2]),
    ] {
        rows.push(vec![
            q.into(),
            k.to_string(),
            format!("residual {}", num(res)),
        ]);
    }
    table(&mut out, &["quantity", "value", "uncertainty"], rows);
    if r.inversion.warning {
        out.push_str("\nwarning: a moment is far from its rounded motif count\n");
    }
    out
}

pub fn fit_md(r: &FitReport) -> String {
    let mut out = String::from("## Quadratic fit |U|² ≈ b − aφ²\n\n");
    table(
        &mut out,
        &["a", "b", "rms residual", "points", "m2 estimate"],
        [vec![
            num(r.fit.a),
            num(r.fit.b),
            num(r.fit.rms_residual),
            r.fit.points.to_string(),
            num(r.m2_estimate),
        ]],
    );
    out
}

pub fn sweep_md(s: &SweepSeries) -> String {
    let mut out = String::new();
    table(
        &mut out,
        &["phi", "usq", "shots", "stderr"],
        s.points
            .iter()
            .map(|p| vec![num(p.phi), num(p.usq), p.shots.to_string(), num(p.stderr)]),
    );
    out
}

pub fn expand_md(e: &PauliExpansion) -> String {
    let mut out = format!("## H^{}\n\n", e.power());
    table(
        &mut out,
        &["term", "coefficient"],
        e.terms()
            .iter()
            .map(|(s, c)| vec![s.to_string(), c.to_string()]),
    );
    out
}

pub fn reproduce_md(r: &ReproduceReport) -> String {
    let mut out = String::new();
    for case in &r.cases {
        let _ = writeln!(out, "## {}\n", case.case);
        let _ = writeln!(
            out,
            "Hardware column: {} (reference only, not asserted).",
            case.hardware_source
        );
        let _ = writeln!(
            out,
            "Sampled column: {} shots per circuit, seed {}.\n",
            r.shots, r.seed
        );
        table(
            &mut out,
            &[
                "quantity",
                "theoretical",
                "hardware-reference",
                "artifact-exact",
                "artifact-sampled",
            ],
            case.rows.iter().map(|row| {
                vec![
                    row.quantity.into(),
                    num(row.theoretical),
                    row.hardware_reference
                        .map(num)
                        .unwrap_or_else(|| "-".into()),
                    num(row.artifact_exact),
                    num(row.artifact_sampled),
                ]
            }),
        );
        out.push('\n');
    }
    out
}

/// One CSV row per (case, quantity).
pub fn reproduce_csv(r: &ReproduceReport) -> String {
    let mut out = String::from(
        "case,quantity,theoretical,hardware_reference,artifact_exact,artifact_sampled\n",
    );
    for case in &r.cases {
        for row in &case.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                case.case,
                row.quantity,
                format_sig(row.theoretical, 12),
                row.hardware_reference
                    .map(|x| format_sig(x, 12))
                    .unwrap_or_default(),
                format_sig(row.artifact_exact, 12),
                format_sig(row.artifact_sampled, 12),
            );
        }
    }
    out
}
