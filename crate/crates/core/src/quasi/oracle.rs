use crate::community::CommunitySet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::QuasiCliqueParams;

/// Vertex limit of [`brute_force_quasi_cliques`].
pub const QUASI_ORACLE_CAP: usize = 16;

/// Test oracle: evaluates the predicate on all `2^n` subsets, then keeps those
/// with no qualifying one-vertex extension.
pub fn brute_force_quasi_cliques(g: &Graph, params: &QuasiCliqueParams) -> Result<CommunitySet> {
    let params = params.validated()?;
    let n = g.vertex_count();
    if n > QUASI_ORACLE_CAP {
        return Err(Error::OracleTooLarge { vertex_count: n, cap: QUASI_ORACLE_CAP });
    }
    let adj: Vec<u32> = (0..n as u32).map(|v| g.adj(v).iter().fold(0, |m, &w| m | 1 << w)).collect();
    let full = (1u32 << n) - 1;

    let qualifies: Vec<bool> = (0..=full)
        .map(|mask| {
            let size = mask.count_ones() as usize;
            let degrees = bits(mask).map(|v| (adj[v] & mask).count_ones() as usize);
            let (min_degree, twice_edges) = degrees.fold((usize::MAX, 0), |(lo, sum), d| (lo.min(d), sum + d));
            let min_degree = if size == 0 { 0 } else { min_degree };
            params.accepts(size, min_degree, twice_edges / 2, connected(mask, &adj))
        })
        .collect();

    let found = (0..=full)
        .filter(|&mask| qualifies[mask as usize])
        .filter(|&mask| bits(full & !mask).all(|v| !qualifies[(mask | 1 << v) as usize]))
        .map(|mask| bits(mask).map(|v| v as u32).collect());
    Ok(CommunitySet::from_sorted_lists(found))
}

fn bits(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&v| mask >> v & 1 == 1)
}

fn connected(mask: u32, adj: &[u32]) -> bool {
    if mask == 0 {
        return true;
    }
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let next = bits(reached).fold(reached, |acc, v| acc | (adj[v] & mask));
        if next == reached {
            return reached == mask;
        }
        reached = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(lambda: &str, gamma: &str, min_size: usize) -> QuasiCliqueParams {
        QuasiCliqueParams::new(lambda.parse().unwrap(), gamma.parse().unwrap())
            .unwrap()
            .with_min_size(min_size)
            .unwrap()
    }

    fn lists(cs: &CommunitySet) -> Vec<Vec<u32>> {
        cs.iter().map(|c| c.members().to_vec()).collect()
    }

    #[test]
    fn triangle_dominates() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        for (l, gm) in [("0.5", "0.5"), ("1", "1"), ("0.3", "0.9")] {
            assert_eq!(lists(&brute_force_quasi_cliques(&g, &params(l, gm, 3)).unwrap()), vec![vec![0, 1, 2]]);
        }
    }

    #[test]
    fn edgeless_graph_has_nothing_dense() {
        let g = Graph::from_edges(5, []).unwrap();
        assert!(brute_force_quasi_cliques(&g, &params("0.5", "1", 3)).unwrap().is_empty());
    }

    #[test]
    fn five_cycle_cliques_are_edges() {
        let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let out = brute_force_quasi_cliques(&g, &params("1", "1", 2)).unwrap();
        assert_eq!(lists(&out), vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn size_guard() {
        let g = Graph::from_edges(17, []).unwrap();
        assert!(matches!(
            brute_force_quasi_cliques(&g, &params("1", "1", 1)),
            Err(Error::OracleTooLarge { vertex_count: 17, cap: 16 })
        ));
    }
}
