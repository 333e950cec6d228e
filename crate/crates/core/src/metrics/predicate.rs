use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::{pairs_of, Graph, SubgraphStats, VertexSubset};

/// Relaxation parameters of a `(λ, γ)`-quasi-clique.
///
/// A set `S` qualifies when every member has at least `λ(|S|−1)` neighbours
/// inside `S`, the induced density is at least `γ`, `|S| ≥ min_size`, and,
/// if requested, `G[S]` is connected. Both thresholds are exact rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuasiCliqueParams {
    pub lambda: Fraction,
    pub gamma: Fraction,
    pub min_size: usize,
    pub require_connected: bool,
}

impl QuasiCliqueParams {
    pub const DEFAULT_MIN_SIZE: usize = 3;

    /// Parameters with the default `min_size = 3` and no connectivity requirement.
    pub fn new(lambda: Fraction, gamma: Fraction) -> Result<Self> {
        Self { lambda, gamma, min_size: Self::DEFAULT_MIN_SIZE, require_connected: false }.validated()
    }

    /// λ = γ = 1: the maximal clique problem.
    pub fn clique(min_size: usize) -> Self {
        Self { lambda: Fraction::ONE, gamma: Fraction::ONE, min_size: min_size.max(1), require_connected: false }
    }

    pub fn with_min_size(mut self, min_size: usize) -> Result<Self> {
        self.min_size = min_size;
        self.validated()
    }

    pub fn with_connectivity(mut self, require_connected: bool) -> Self {
        self.require_connected = require_connected;
        self
    }

    pub fn validated(self) -> Result<Self> {
        if !self.lambda.in_unit_interval() {
            return Err(Error::InvalidParams(format!("lambda {} outside (0, 1]", self.lambda)));
        }
        if !self.gamma.in_unit_interval() {
            return Err(Error::InvalidParams(format!("gamma {} outside (0, 1]", self.gamma)));
        }
        if self.min_size == 0 {
            return Err(Error::InvalidParams("min_size must be at least 1".into()));
        }
        Ok(self)
    }

    /// Smallest internal degree every member of a size-`size` set needs:
    /// `⌈λ(size−1)⌉`.
    #[inline]
    pub fn degree_threshold(&self, size: usize) -> u64 {
        self.lambda.ceil_mul(size.saturating_sub(1) as u64)
    }

    /// Smallest internal edge count a size-`size` set needs: `⌈γ·C(size,2)⌉`.
    /// Zero for `size <= 1`, where density is taken as 1.
    #[inline]
    pub fn edge_threshold(&self, size: usize) -> u64 {
        self.gamma.ceil_mul(pairs_of(size))
    }

    /// The predicate on precomputed statistics.
    #[inline]
    pub fn accepts(&self, size: usize, min_internal_degree: usize, internal_edges: usize, connected: bool) -> bool {
        size >= self.min_size
            && min_internal_degree as u64 >= self.degree_threshold(size)
            && internal_edges as u64 >= self.edge_threshold(size)
            && (connected || !self.require_connected)
    }

    pub fn accepts_stats(&self, stats: &SubgraphStats) -> bool {
        self.accepts(stats.size, stats.min_internal_degree, stats.internal_edges, stats.connected)
    }
}

/// Evaluates the quasi-clique predicate on `G[S]`; statistics are returned
/// whatever the verdict.
pub fn is_quasi_clique(g: &Graph, s: &VertexSubset, params: &QuasiCliqueParams) -> Result<(bool, SubgraphStats)> {
    let stats = g.induced_stats(s)?;
    Ok((params.accepts_stats(&stats), stats))
}
