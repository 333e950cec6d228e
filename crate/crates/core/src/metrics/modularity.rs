use serde::Serialize;

use super::partition::Partition;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Contribution of one block to `Q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockTerm {
    /// `e_i`: edges with both endpoints in the block.
    pub internal_edges: u64,
    /// `d_i`: sum of full-graph degrees over the block.
    pub total_degree: u64,
    /// `e_i / m`
    pub internal_edge_fraction: f64,
    /// `(d_i / 2m)^2`
    pub squared_degree_fraction: f64,
}

/// Modularity `Q = Σ_i [e_i/m − (d_i/2m)²]` with its per-block decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularityReport {
    pub q: f64,
    pub edge_count: u64,
    pub per_block: Vec<BlockTerm>,
}

impl ModularityReport {
    /// `Q` as the exact fraction `numerator / (4m²)`.
    ///
    /// Multiplying through by `4m²` leaves `4m·Σe_i − Σd_i²`, which is an integer.
    pub fn exact(&self) -> (i128, i128) {
        let m = self.edge_count as i128;
        let numerator = self
            .per_block
            .iter()
            .fold(0i128, |acc, b| acc + 4 * m * b.internal_edges as i128 - (b.total_degree as i128).pow(2));
        (numerator, 4 * m * m)
    }
}

pub fn modularity(g: &Graph, p: &Partition) -> Result<ModularityReport> {
    p.check_for(g)?;
    let m = g.edge_count() as u64;
    if m == 0 {
        return Err(Error::NoEdges);
    }
    let k = p.block_count();
    let mut internal = vec![0u64; k];
    let mut degree = vec![0u64; k];
    for v in 0..g.vertex_count() as u32 {
        degree[p.block(v) as usize] += g.degree(v) as u64;
    }
    for (u, v) in g.edges() {
        let b = p.block(u);
        if b == p.block(v) {
            internal[b as usize] += 1;
        }
    }
    assert!(internal.iter().sum::<u64>() <= m, "internal edges exceed m");
    assert_eq!(degree.iter().sum::<u64>(), 2 * m, "block degrees must sum to 2m");

    let mf = m as f64;
    let per_block: Vec<BlockTerm> = internal
        .iter()
        .zip(&degree)
        .map(|(&e, &d)| BlockTerm {
            internal_edges: e,
            total_degree: d,
            internal_edge_fraction: e as f64 / mf,
            squared_degree_fraction: (d as f64 / (2.0 * mf)).powi(2),
        })
        .collect();
    let q = per_block.iter().map(|b| b.internal_edge_fraction - b.squared_degree_fraction).sum();
    Ok(ModularityReport { q, edge_count: m, per_block })
}
