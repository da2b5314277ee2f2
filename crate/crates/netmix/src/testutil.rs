//! Shared fixtures for unit tests.

use crate::graph::WeightedDigraph;
use rand::Rng;

/// The worked toy network: 8 vertices A..H mapped to ids 0..7, with
/// C->A:1, D->A:2, A->E:3, B->F:4, A->B:10, B->G:5, H->B:6 (W = 31).
pub(crate) fn toy_graph() -> WeightedDigraph {
    WeightedDigraph::from_edges(
        8,
        vec![
            (2, 0, 1.0),
            (3, 0, 2.0),
            (0, 4, 3.0),
            (1, 5, 4.0),
            (0, 1, 10.0),
            (1, 6, 5.0),
            (7, 1, 6.0),
        ],
    )
    .unwrap()
}

/// Small random digraph with at least one edge; weights in (0, 10].
pub(crate) fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> WeightedDigraph {
    loop {
        let n = rng.gen_range(2..=max_vertices);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.gen_bool(0.35) {
                    edges.push((i, j, rng.gen_range(0.1..10.0)));
                }
            }
        }
        if !edges.is_empty() {
            return WeightedDigraph::from_edges(n, edges).unwrap();
        }
    }
}
