//! Circuit IR for the evolution and correlator protocols.
//!
//! # Evolution block
//!
//! For an edge `(i, j)` the five gates `CX(i,j) · H(i) · P(2φ)(i) · H(i) · CX(i,j)`
//! implement `e^{iφ}·exp(−iφ σᵢˣσⱼˣ)`:
//!
//! - `P(2φ) = e^{iφ}·exp(−iφσᶻ)` and `H σᶻ H = σˣ`, so `H P(2φ) H = e^{iφ}·exp(−iφσᵢˣ)`;
//! - conjugation by `CX(i,j)` maps `σᵢˣ` to `σᵢˣσⱼˣ`.
//!
//! The per-edge global phase and the sign of the exponent both drop out of
//! `|U|²`, probabilities and parity expectations. Blocks are emitted in
//! ascending edge order; the edge terms commute, so the order is free.

mod qasm;

pub use qasm::emit_qasm;

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pauli::ParitySubset;
use crate::simulator::{Gate, StateVector, DEFAULT_MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    P,
    Cx,
    Ry,
    X,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::P => "p",
            GateKind::Cx => "cx",
            GateKind::Ry => "ry",
            GateKind::X => "x",
        }
    }

    fn arity(self) -> (usize, usize) {
        match self {
            GateKind::H | GateKind::X => (0, 1),
            GateKind::P | GateKind::Ry => (1, 1),
            GateKind::Cx => (0, 2),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    kind: GateKind,
    params: Vec<f64>,
    qubits: Vec<usize>,
}

impl GateOp {
    /// Checks parameter and qubit arity; two-qubit gates need distinct qubits.
    pub fn new(kind: GateKind, params: Vec<f64>, qubits: Vec<usize>) -> Result<Self> {
        let (np, nq) = kind.arity();
        if params.len() != np || qubits.len() != nq {
            return Err(Error::GateArity {
                kind: kind.name(),
                expected_params: np,
                expected_qubits: nq,
            });
        }
        if nq == 2 && qubits[0] == qubits[1] {
            return Err(Error::RepeatedQubit(qubits[0]));
        }
        Ok(GateOp {
            kind,
            params,
            qubits,
        })
    }

    pub fn h(q: usize) -> Self {
        GateOp {
            kind: GateKind::H,
            params: vec![],
            qubits: vec![q],
        }
    }

    pub fn x(q: usize) -> Self {
        GateOp {
            kind: GateKind::X,
            params: vec![],
            qubits: vec![q],
        }
    }

    pub fn p(q: usize, lambda: f64) -> Self {
        GateOp {
            kind: GateKind::P,
            params: vec![lambda],
            qubits: vec![q],
        }
    }

    pub fn ry(q: usize, theta: f64) -> Self {
        GateOp {
            kind: GateKind::Ry,
            params: vec![theta],
            qubits: vec![q],
        }
    }

    /// # Panics
    /// If `control == target`.
    pub fn cx(control: usize, target: usize) -> Self {
        assert_ne!(control, target, "cx needs distinct qubits");
        GateOp {
            kind: GateKind::Cx,
            params: vec![],
            qubits: vec![control, target],
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn to_gate(&self) -> Gate {
        let q = self.qubits[0];
        match self.kind {
            GateKind::H => Gate::H(q),
            GateKind::X => Gate::X(q),
            GateKind::P => Gate::P(q, self.params[0]),
            GateKind::Ry => Gate::RY(q, self.params[0]),
            GateKind::Cx => Gate::CX {
                control: q,
                target: self.qubits[1],
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<GateOp>,
    measured: Vec<(usize, usize)>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
            measured: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateOp] {
        &self.gates
    }

    /// `(qubit, classical bit)` pairs in measurement order.
    pub fn measured(&self) -> &[(usize, usize)] {
        &self.measured
    }

    /// Number of classical bits.
    pub fn n_clbits(&self) -> usize {
        self.measured.iter().map(|&(_, c)| c + 1).max().unwrap_or(0)
    }

    pub fn push(&mut self, op: GateOp) -> Result<&mut Self> {
        for &q in op.qubits() {
            if q >= self.n_qubits {
                return Err(Error::QubitIndex {
                    qubit: q,
                    n: self.n_qubits,
                });
            }
            if self.measured.iter().any(|&(m, _)| m == q) {
                return Err(Error::GateAfterMeasurement(q));
            }
        }
        self.gates.push(op);
        Ok(self)
    }

    pub fn measure(&mut self, qubit: usize, clbit: usize) -> Result<&mut Self> {
        if qubit >= self.n_qubits {
            return Err(Error::QubitIndex {
                qubit,
                n: self.n_qubits,
            });
        }
        self.measured.push((qubit, clbit));
        Ok(self)
    }
}

/// `|U|²` protocol circuit: one five-gate block per edge, edges ascending.
pub fn build_evolution_circuit(g: &Graph, phi: f64) -> Circuit {
    let mut c = Circuit::new(g.n());
    for &(i, j) in g.edges() {
        c.gates.extend([
            GateOp::cx(i, j),
            GateOp::h(i),
            GateOp::p(i, 2.0 * phi),
            GateOp::h(i),
            GateOp::cx(i, j),
        ]);
    }
    c
}

/// Correlator protocol: `RY(−π/2)` on every qubit of `subset`, then measure
/// those qubits into classical bits `0, 1, …` in ascending qubit order.
/// `RY(−π/2)` takes `|±⟩` to `|0⟩`/`|1⟩`, so the z-parity of the measured
/// bits is the σˣ-parity of the prepared state.
pub fn build_correlator_circuit(n: usize, subset: ParitySubset) -> Result<Circuit> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if subset.span() > n {
        return Err(Error::QubitIndex {
            qubit: subset.span() - 1,
            n,
        });
    }
    let mut c = Circuit::new(n);
    for q in subset.vertices() {
        c.push(GateOp::ry(q, -FRAC_PI_2))?;
    }
    for (k, q) in subset.vertices().enumerate() {
        c.measure(q, k)?;
    }
    Ok(c)
}

/// Pre-measurement state of a circuit and the qubits it measures.
#[derive(Debug, Clone, PartialEq)]
pub struct CircuitRun {
    pub state: StateVector,
    pub measured: Vec<(usize, usize)>,
}

/// Interprets `c` on `|0…0⟩`.
pub fn run_circuit(c: &Circuit) -> Result<CircuitRun> {
    let state = StateVector::zero_with_cap(c.n_qubits, c.n_qubits.max(DEFAULT_MAX_QUBITS))?;
    Ok(CircuitRun {
        state: run_on(state, c)?,
        measured: c.measured.clone(),
    })
}

/// Interprets the gates of `c` on an existing state.
pub fn run_on(mut state: StateVector, c: &Circuit) -> Result<StateVector> {
    if state.n_qubits() != c.n_qubits {
        return Err(Error::DimensionMismatch {
            left: state.n_qubits(),
            right: c.n_qubits,
        });
    }
    for op in &c.gates {
        state.apply(op.to_gate())?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::evolve_graph_state;

    #[test]
    fn evolution_gate_counts() {
        let chain = build_evolution_circuit(&Graph::chain(3).unwrap(), 0.2);
        assert_eq!(chain.gates().len(), 10);
        let kinds: Vec<_> = chain.gates()[..5].iter().map(|g| g.kind()).collect();
        use GateKind::*;
        assert_eq!(kinds, vec![Cx, H, P, H, Cx]);
        assert_eq!(chain.gates()[0].qubits(), &[0, 1]);
        assert_eq!(chain.gates()[5].qubits(), &[1, 2]);
        assert_eq!(chain.gates()[2].params(), &[0.4]);

        assert_eq!(
            build_evolution_circuit(&Graph::chain(2).unwrap(), 0.2)
                .gates()
                .len(),
            5
        );
        assert!(build_evolution_circuit(&Graph::empty(2).unwrap(), 0.2)
            .gates()
            .is_empty());
    }

    #[test]
    fn correlator_circuits() {
        let c = build_correlator_circuit(3, ParitySubset::from_vertices([0, 2])).unwrap();
        assert_eq!(c.gates().len(), 2);
        assert_eq!(c.measured(), &[(0, 0), (2, 1)]);
        let c = build_correlator_circuit(4, ParitySubset(0b1111)).unwrap();
        assert_eq!((c.gates().len(), c.measured().len()), (4, 4));
        let c = build_correlator_circuit(3, ParitySubset::from_vertices([1])).unwrap();
        assert_eq!((c.gates().len(), c.measured().len()), (1, 1));
        assert!(matches!(
            build_correlator_circuit(3, ParitySubset::EMPTY),
            Err(Error::EmptySubset)
        ));
        assert!(build_correlator_circuit(2, ParitySubset::from_vertices([2])).is_err());
    }

    #[test]
    fn run_matches_direct_evolution() {
        let empty = run_circuit(&Circuit::new(2)).unwrap();
        assert_eq!(empty.state, StateVector::zero(2).unwrap());

        for phi in [0.0, 0.3, 1.1, 2.5] {
            let chain = Graph::chain(3).unwrap();
            let run = run_circuit(&build_evolution_circuit(&chain, phi)).unwrap();
            assert!((run.state.vacuum_return_probability() - phi.cos().powi(4)).abs() < 1e-12);

            let sq = Graph::cycle(4).unwrap();
            let run = run_circuit(&build_evolution_circuit(&sq, phi)).unwrap();
            let expected = (phi.cos().powi(4) + phi.sin().powi(4)).powi(2);
            assert!((run.state.vacuum_return_probability() - expected).abs() < 1e-12);
            let direct = evolve_graph_state(&sq, phi).unwrap();
            assert!((direct.vacuum_return_probability() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn circuit_validation() {
        let mut c = Circuit::new(2);
        assert!(matches!(
            c.push(GateOp::h(2)),
            Err(Error::QubitIndex { qubit: 2, n: 2 })
        ));
        c.push(GateOp::h(0)).unwrap().measure(0, 0).unwrap();
        assert!(matches!(
            c.push(GateOp::x(0)),
            Err(Error::GateAfterMeasurement(0))
        ));
        c.push(GateOp::x(1)).unwrap();
        assert!(c.measure(5, 1).is_err());
        assert_eq!(c.n_clbits(), 1);

        assert!(GateOp::new(GateKind::P, vec![], vec![0]).is_err());
        assert!(GateOp::new(GateKind::Cx, vec![], vec![1, 1]).is_err());
        assert!(GateOp::new(GateKind::Ry, vec![0.1], vec![0]).is_ok());
    }

    #[test]
    fn run_on_checks_dimensions() {
        let c = Circuit::new(3);
        assert!(run_on(StateVector::zero(2).unwrap(), &c).is_err());
    }
}
