//! Exact maximal clique enumeration.
//!
//! The outer loop walks vertices in degeneracy order; for a vertex `v` the
//! candidates are its later neighbours and the excluded set its earlier
//! neighbours, so each maximal clique is reported exactly once, from its
//! earliest vertex. The inner search is Bron–Kerbosch with Tomita pivoting.

use rayon::prelude::*;

use crate::community::CommunitySet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// All maximal cliques of size at least `min_size`, in canonical order.
///
/// Runs on the current rayon pool; the result does not depend on its size.
pub fn enumerate_maximal_cliques(g: &Graph, min_size: usize) -> CommunitySet {
    let dec = g.core_decomposition();
    let lists: Vec<Vec<VertexId>> = (0..g.vertex_count())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            search_from(g, &dec.position, dec.order[i], min_size, &mut |c| out.push(c.to_vec()));
            out
        })
        .collect();
    CommunitySet::from_sorted_lists(lists)
}

/// Streams every maximal clique of size at least `min_size` to `visit`
/// without materializing the result; single-threaded, unspecified order.
/// Each slice is sorted ascending.
pub fn for_each_maximal_clique<F>(g: &Graph, min_size: usize, mut visit: F)
where
    F: FnMut(&[VertexId]),
{
    let dec = g.core_decomposition();
    for &v in &dec.order {
        search_from(g, &dec.position, v, min_size, &mut visit);
    }
}

fn search_from(g: &Graph, position: &[usize], v: VertexId, min_size: usize, visit: &mut dyn FnMut(&[VertexId])) {
    let pv = position[v as usize];
    let (mut p, mut x): (Vec<VertexId>, Vec<VertexId>) = g.adj(v).iter().partition(|&&w| position[w as usize] > pv);
    // partition keeps the ascending order of adj
    let mut r = vec![v];
    let mut emit = |clique: &[VertexId]| {
        if clique.len() >= min_size {
            let mut sorted = clique.to_vec();
            sorted.sort_unstable();
            visit(&sorted);
        }
    };
    bron_kerbosch(g, &mut r, &mut p, &mut x, &mut emit);
}

/// `p` and `x` stay sorted ascending throughout.
fn bron_kerbosch(
    g: &Graph,
    r: &mut Vec<VertexId>,
    p: &mut Vec<VertexId>,
    x: &mut Vec<VertexId>,
    emit: &mut dyn FnMut(&[VertexId]),
) {
    if p.is_empty() {
        if x.is_empty() {
            emit(r);
        }
        return;
    }
    // pivot maximizing |P ∩ N(u)| over P ∪ X
    let pivot = p
        .iter()
        .chain(x.iter())
        .copied()
        .max_by_key(|&u| (count_common(p, g.adj(u)), std::cmp::Reverse(u)))
        .expect("P is non-empty");
    let branch: Vec<VertexId> = p.iter().copied().filter(|&w| !g.has_edge(pivot, w)).collect();
    for w in branch {
        let nw = g.adj(w);
        let mut next_p = intersect(p, nw);
        let mut next_x = intersect(x, nw);
        r.push(w);
        bron_kerbosch(g, r, &mut next_p, &mut next_x, emit);
        r.pop();
        let at = p.binary_search(&w).expect("branch vertex in P");
        p.remove(at);
        let at = x.binary_search(&w).unwrap_err();
        x.insert(at, w);
    }
}

fn count_common(small: &[VertexId], adj: &[VertexId]) -> usize {
    small.iter().filter(|w| adj.binary_search(w).is_ok()).count()
}

fn intersect(a: &[VertexId], b: &[VertexId]) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Vertex limit of [`brute_force_maximal_cliques`].
pub const CLIQUE_ORACLE_CAP: usize = 20;

/// Test oracle: checks every one of the `2^n` subsets for completeness and
/// maximality. Isolated vertices come out as singleton cliques.
pub fn brute_force_maximal_cliques(g: &Graph) -> Result<CommunitySet> {
    let n = g.vertex_count();
    if n > CLIQUE_ORACLE_CAP {
        return Err(Error::OracleTooLarge { vertex_count: n, cap: CLIQUE_ORACLE_CAP });
    }
    let adj: Vec<u32> = (0..n as u32).map(|v| g.adj(v).iter().fold(0u32, |m, &w| m | (1 << w))).collect();
    let is_clique = |mask: u32| (0..n).filter(|&v| mask >> v & 1 == 1).all(|v| mask & !(1 << v) & !adj[v] == 0);
    let mut found = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if !is_clique(mask) {
            continue;
        }
        let common = (0..n).filter(|&v| mask >> v & 1 == 1).fold(u32::MAX, |acc, v| acc & adj[v]);
        let extendable = common & !mask & ((1u32 << n) - 1) != 0;
        if !extendable {
            found.push((0..n as u32).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    Ok(CommunitySet::from_sorted_lists(found))
}
