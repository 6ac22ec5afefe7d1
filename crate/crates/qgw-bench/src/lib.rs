//! Benchmark fixtures shared by the criterion targets.

use qgw_core::abcgraphs::{random_abc, AbcParams, RandomProfile};

/// A reproducible undirected instance at dimension n.
pub fn fixture(n: usize) -> AbcParams {
    random_abc(
        n,
        7,
        &RandomProfile {
            classical_edge_prob: 0.3,
            strange_edge_prob: 0.3,
            b_rank: (n - 1) / 2,
            loopless: true,
        },
    )
    .expect("fixture parameters are feasible")
}
