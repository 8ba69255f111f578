mod common;

use common::{arb_graph, arb_state};
use evograph_core::simulator::evolve_graph_state;
use evograph_core::{Gate, Graph, ParitySubset, StateVector};
use proptest::prelude::*;

fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
    let q = 0..n;
    prop_oneof![
        q.clone().prop_map(Gate::H),
        q.clone().prop_map(Gate::X),
        (q.clone(), -7.0f64..7.0).prop_map(|(q, l)| Gate::P(q, l)),
        (q.clone(), -7.0f64..7.0).prop_map(|(q, t)| Gate::RY(q, t)),
        (q.clone(), q)
            .prop_filter("distinct", |(c, t)| c != t)
            .prop_map(|(control, target)| Gate::CX { control, target }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gates_preserve_norm(gates in prop::collection::vec(arb_gate(4), 1..40)) {
        let mut s = StateVector::zero(4).unwrap();
        for g in gates {
            s.apply(g).unwrap();
            prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn edge_order_does_not_matter(g in arb_graph(6), phi in -4.0f64..4.0, seed in any::<u64>()) {
        let direct = evolve_graph_state(&g, phi).unwrap();
        let mut edges = g.edges().to_vec();
        let mut s = seed | 1;
        for i in (1..edges.len()).rev() {
            s ^= s << 13; s ^= s >> 7; s ^= s << 17;
            edges.swap(i, s as usize % (i + 1));
        }
        let mut shuffled = StateVector::zero(g.n()).unwrap();
        for (i, j) in edges {
            shuffled.apply_edge_rotation(i, j, phi).unwrap();
        }
        for (a, b) in direct.amplitudes().iter().zip(shuffled.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
        prop_assert!((direct.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn curvature_of_return_probability_is_minus_two_m2(g in arb_graph(6)) {
        // central second difference of |U|²(φ) at φ = 0
        let h = 1e-4;
        let usq = |phi: f64| evolve_graph_state(&g, phi).unwrap().vacuum_return_probability();
        let second = (usq(h) - 2.0 * usq(0.0) + usq(-h)) / (h * h);
        let m2 = g.count_motifs().k2 as f64;
        prop_assert!((second + 2.0 * m2).abs() < 1e-4 * m2.max(1.0) + 1e-4,
            "second difference {} vs {}", second, -2.0 * m2);
    }

    #[test]
    fn parity_expectations_are_bounded(psi in arb_state(4), mask in 0u64..16) {
        let v = psi.parity_expectation(ParitySubset(mask)).unwrap();
        prop_assert!((-1.0..=1.0).contains(&v));
        if mask == 0 {
            prop_assert_eq!(v, 1.0);
        }
    }
}

#[test]
fn twenty_qubit_sweep_point_is_normalized() {
    let g = Graph::new(20, (0..19).map(|v| (v, v + 1)).chain([(0, 19), (2, 11)])).unwrap();
    let s = evolve_graph_state(&g, 0.17).unwrap();
    assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
}
