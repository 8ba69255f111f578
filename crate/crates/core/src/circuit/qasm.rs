//! OpenQASM 2.0 emission.
//!
//! `p(λ)` is written as `u1(λ)`, which every `qelib1.inc` provides. Angles
//! use 17 significant digits so they round-trip to the same `f64`.

use std::fmt::Write;

use super::{Circuit, GateKind};
use crate::numfmt::format_sig;

fn angle(x: f64) -> String {
    format_sig(x, 17)
}

pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", c.n_qubits());
    let clbits = c.n_clbits();
    if clbits > 0 {
        let _ = writeln!(out, "creg c[{clbits}];");
    }
    for op in c.gates() {
        let q = op.qubits();
        let _ = match op.kind() {
            GateKind::H => writeln!(out, "h q[{}];", q[0]),
            GateKind::X => writeln!(out, "x q[{}];", q[0]),
            GateKind::P => writeln!(out, "u1({}) q[{}];", angle(op.params()[0]), q[0]),
            GateKind::Ry => writeln!(out, "ry({}) q[{}];", angle(op.params()[0]), q[0]),
            GateKind::Cx => writeln!(out, "cx q[{}],q[{}];", q[0], q[1]),
        };
    }
    for &(q, bit) in c.measured() {
        let _ = writeln!(out, "measure q[{q}] -> c[{bit}];");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_correlator_circuit, build_evolution_circuit};
    use crate::graph::Graph;
    use crate::pauli::ParitySubset;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn empty_circuit_is_header_only() {
        let text = emit_qasm(&Circuit::new(1));
        assert_eq!(text, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\n");
    }

    #[test]
    fn single_edge() {
        let text = emit_qasm(&build_evolution_circuit(
            &Graph::chain(2).unwrap(),
            FRAC_PI_4,
        ));
        let expected = "OPENQASM 2.0;
include \"qelib1.inc\";
qreg q[2];
cx q[0],q[1];
h q[0];
u1(1.5707963267948966) q[0];
h q[0];
cx q[0],q[1];
";
        assert_eq!(text, expected);
        assert_eq!(text.lines().count(), 8);
    }

    #[test]
    fn correlator_measurements() {
        let c = build_correlator_circuit(3, ParitySubset::from_vertices([0, 2])).unwrap();
        let text = emit_qasm(&c);
        assert!(text.contains("creg c[2];\n"));
        assert!(text.contains("ry(-1.5707963267948966) q[2];\n"));
        assert!(text.ends_with("measure q[0] -> c[0];\nmeasure q[2] -> c[1];\n"));
    }
}
