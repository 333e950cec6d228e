//! Maximal `(λ, γ)`-quasi-clique enumeration.
//!
//! The quasi-clique property is not hereditary, so maximality here means
//! local maximality: no single vertex can be added while keeping the set
//! qualifying. The exhaustive oracle and the search share that definition.

mod oracle;
mod search;
mod sweep;

use rayon::prelude::*;

use crate::community::CommunitySet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSubset};
use crate::metrics::{is_quasi_clique, QuasiCliqueParams};

pub use oracle::{brute_force_quasi_cliques, QUASI_ORACLE_CAP};
pub use sweep::{summarize_cover, sweep, CoverSummary, SweepCell, SweepGrid};

/// Every locally maximal quasi-clique of `g` under `params`, in canonical order.
///
/// Anchors are searched in parallel on the current rayon pool; the output is
/// identical for any pool size.
pub fn enumerate_maximal_quasi_cliques(g: &Graph, params: &QuasiCliqueParams) -> Result<CommunitySet> {
    let params = params.validated()?;
    let plan = search::Plan::new(g, params);
    let n = g.vertex_count();
    let lists: Vec<Vec<VertexId>> = plan
        .anchors()
        .par_iter()
        .map_init(
            || search::Scratch::new(n),
            |scratch, &anchor| {
                let mut out = Vec::new();
                search::search_anchor(&plan, scratch, anchor, &mut out);
                out
            },
        )
        .flatten_iter()
        .collect();
    Ok(CommunitySet::from_sorted_lists(lists))
}

/// True iff no single vertex outside `s` can be added with the result still
/// qualifying. `s` itself must qualify.
pub fn is_locally_maximal(g: &Graph, s: &VertexSubset, params: &QuasiCliqueParams) -> Result<bool> {
    let (qualifies, _) = is_quasi_clique(g, s, params)?;
    if !qualifies {
        return Err(Error::NotQuasiClique);
    }
    // a vertex with no neighbour in s would have internal degree 0 < ⌈λ|s|⌉
    let mut frontier: Vec<VertexId> =
        s.members().iter().flat_map(|&v| g.adj(v).iter().copied()).filter(|&w| !s.contains(w)).collect();
    frontier.sort_unstable();
    frontier.dedup();
    for w in frontier {
        let mut grown = s.members().to_vec();
        grown.push(w);
        let grown = VertexSubset::new(grown, g.vertex_count())?;
        if is_quasi_clique(g, &grown, params)?.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::enumerate_maximal_cliques;
    use crate::fraction::Fraction;

    fn params(lambda: &str, gamma: &str, min_size: usize) -> QuasiCliqueParams {
        QuasiCliqueParams::new(lambda.parse().unwrap(), gamma.parse().unwrap())
            .unwrap()
            .with_min_size(min_size)
            .unwrap()
    }

    fn cycle5() -> Graph {
        Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap()
    }

    fn lists(cs: &CommunitySet) -> Vec<Vec<u32>> {
        cs.iter().map(|c| c.members().to_vec()).collect()
    }

    #[test]
    fn five_cycle_at_one_half() {
        let g = cycle5();
        let p = params("0.5", "0.5", 3);
        let all = VertexSubset::new((0..5).collect(), 5).unwrap();
        assert!(is_locally_maximal(&g, &all, &p).unwrap());
        let out = enumerate_maximal_quasi_cliques(&g, &p).unwrap();
        assert!(out.contains(&all));
        assert_eq!(out, brute_force_quasi_cliques(&g, &p).unwrap());
    }

    #[test]
    fn clique_parameters_reduce_to_maximal_cliques() {
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6), (4, 6), (3, 5)])
            .unwrap();
        for min_size in 1..=4 {
            let q = enumerate_maximal_quasi_cliques(&g, &QuasiCliqueParams::clique(min_size)).unwrap();
            assert_eq!(q, enumerate_maximal_cliques(&g, min_size), "min_size {min_size}");
        }
        let tri = VertexSubset::new(vec![0, 1, 2], 7).unwrap();
        assert!(is_locally_maximal(&g, &tri, &QuasiCliqueParams::clique(3)).unwrap());
        let edge = VertexSubset::new(vec![0, 1], 7).unwrap();
        assert!(!is_locally_maximal(&g, &edge, &QuasiCliqueParams::clique(2)).unwrap());
    }

    #[test]
    fn local_maximality_requires_a_qualifying_set() {
        let g = cycle5();
        let s = VertexSubset::new(vec![0, 2], 5).unwrap();
        assert!(matches!(is_locally_maximal(&g, &s, &QuasiCliqueParams::clique(2)), Err(Error::NotQuasiClique)));
    }

    #[test]
    fn isolated_vertices_at_min_size_one() {
        let g = Graph::from_edges(4, [(0, 1)]).unwrap();
        let out = enumerate_maximal_quasi_cliques(&g, &params("0.5", "0.5", 1)).unwrap();
        assert_eq!(lists(&out), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn invalid_params_rejected() {
        let g = cycle5();
        let bad = QuasiCliqueParams {
            lambda: Fraction::new(0, 1).unwrap(),
            gamma: Fraction::ONE,
            min_size: 3,
            require_connected: false,
        };
        assert!(enumerate_maximal_quasi_cliques(&g, &bad).is_err());
    }

    #[test]
    fn disconnected_sets_only_without_connectivity_flag() {
        // Two disjoint triangles. At λ = γ = 1/4 the disconnected union
        // qualifies, and each triangle is still locally maximal because any
        // single vertex from the other triangle joins with internal degree 0.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let loose = params("0.25", "0.25", 3);
        let out = enumerate_maximal_quasi_cliques(&g, &loose).unwrap();
        assert_eq!(lists(&out), vec![vec![0, 1, 2, 3, 4, 5], vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(out, brute_force_quasi_cliques(&g, &loose).unwrap());
        let connected = loose.with_connectivity(true);
        let out = enumerate_maximal_quasi_cliques(&g, &connected).unwrap();
        assert_eq!(lists(&out), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(out, brute_force_quasi_cliques(&g, &connected).unwrap());
    }
}
