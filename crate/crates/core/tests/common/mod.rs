#![allow(dead_code)]

use evograph_core::{Graph, StateVector};
use num_complex::Complex64;
use proptest::prelude::*;

pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over `all_pairs(n)`.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges = all_pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1);
    Graph::new(n, edges.map(|(_, e)| e)).unwrap()
}

/// Every graph on exactly `n` labelled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs = n * (n - 1) / 2;
    (0..1u64 << pairs).map(move |m| graph_from_mask(n, m))
}

pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0..1u64 << pairs).prop_map(|(n, m)| graph_from_mask(n, m))
    })
}

pub fn arb_state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-zero", |v| {
            v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3)
        })
        .prop_map(|v| {
            StateVector::from_amplitudes(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
                .unwrap()
        })
}
