//! Fixtures shared by the benchmarks.

use evograph_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi graph `G(n, p)` from a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::with_limit(n, edges, n).expect("valid random graph")
}
