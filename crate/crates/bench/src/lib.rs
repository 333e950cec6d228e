//! Fixed inputs shared by the enumeration benchmarks.

use cliquerelax_core::generators::{gnp, planted_quasi_clique, ring_of_cliques, PlantSpec};
use cliquerelax_core::{Fraction, Graph};

/// Sparse `G(n, p)` with average degree near 20.
pub fn sparse_random(n: usize, seed: u64) -> Graph {
    gnp(n, 20.0 / n as f64, seed).expect("valid probability").graph
}

/// Dense small `G(n, p)`, the hard regime for clique search.
pub fn dense_random(n: usize, p: f64, seed: u64) -> Graph {
    gnp(n, p, seed).expect("valid probability").graph
}

/// Sparse background with a few planted `(0.9, 0.9)` quasi-cliques.
pub fn planted(n: usize, seed: u64) -> Graph {
    let nine: Fraction = "0.9".parse().expect("decimal");
    let plants: Vec<PlantSpec> = (0..10).map(|i| PlantSpec { size: 8 + i, lambda: nine, gamma: nine }).collect();
    planted_quasi_clique(n, 20.0 / n as f64, &plants, seed).expect("plants fit").graph
}

pub fn ring(cliques: usize, size: usize) -> Graph {
    ring_of_cliques(cliques, size).expect("valid ring").graph
}
