use std::collections::BTreeMap;

use serde::Serialize;

use super::enumerate_maximal_quasi_cliques;
use crate::community::CommunitySet;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::Graph;
use crate::metrics::QuasiCliqueParams;

/// Counts and coverage of a (possibly overlapping) cover.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverSummary {
    pub community_count: usize,
    /// community size → number of communities of that size
    pub size_histogram: BTreeMap<usize, usize>,
    pub covered_vertices: usize,
    /// covered vertices / all vertices, 0 for an empty graph
    pub coverage_fraction: f64,
    /// mean number of communities per covered vertex, 0 if nothing is covered
    pub mean_overlap: f64,
}

pub fn summarize_cover(g: &Graph, cover: &CommunitySet) -> CoverSummary {
    let mut size_histogram = BTreeMap::new();
    for c in cover {
        *size_histogram.entry(c.len()).or_insert(0) += 1;
    }
    let counts = cover.membership_counts(g.vertex_count());
    let covered = counts.iter().filter(|&&c| c > 0).count();
    let memberships: usize = counts.iter().sum();
    CoverSummary {
        community_count: cover.len(),
        size_histogram,
        covered_vertices: covered,
        coverage_fraction: if g.vertex_count() == 0 { 0.0 } else { covered as f64 / g.vertex_count() as f64 },
        mean_overlap: if covered == 0 { 0.0 } else { memberships as f64 / covered as f64 },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub lambda: Fraction,
    pub gamma: Fraction,
    #[serde(flatten)]
    pub summary: CoverSummary,
}

/// Row-major over `lambdas × gammas`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepGrid {
    pub min_size: usize,
    pub cells: Vec<SweepCell>,
}

/// Enumerates and summarizes each `(λ, γ)` cell independently.
pub fn sweep(g: &Graph, lambdas: &[Fraction], gammas: &[Fraction], min_size: usize) -> Result<SweepGrid> {
    if lambdas.is_empty() || gammas.is_empty() {
        return Err(Error::InvalidParams("sweep needs at least one lambda and one gamma".into()));
    }
    let mut cells = Vec::with_capacity(lambdas.len() * gammas.len());
    for &lambda in lambdas {
        for &gamma in gammas {
            let params = QuasiCliqueParams::new(lambda, gamma)?.with_min_size(min_size)?;
            let cover = enumerate_maximal_quasi_cliques(g, &params)?;
            cells.push(SweepCell { lambda, gamma, summary: summarize_cover(g, &cover) });
        }
    }
    Ok(SweepGrid { min_size, cells })
}
