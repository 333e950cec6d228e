//! Immutable simple undirected graphs in compressed sparse row form.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Dense vertex identifier in `0..vertex_count`.
pub type VertexId = u32;

/// Simple undirected graph with sorted adjacency lists.
///
/// Built once through [`Graph::from_edges`] and never mutated afterwards, so
/// it can be shared freely between enumeration workers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate and reversed pairs collapse to
    /// one edge; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n > VertexId::MAX as usize {
            return Err(Error::InvalidParams(format!("vertex count {n} exceeds u32 range")));
        }
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x as u64, vertex_count: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            pairs.push(if u < v { (u, v) } else { (v, u) });
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_canonical_pairs(n, &pairs))
    }

    /// `pairs` must be sorted, deduplicated, with `u < v < n` in each pair.
    fn from_canonical_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Graph {
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0; 2 * pairs.len()];
        // Pairs arrive sorted by smaller endpoint, so every list fills in
        // ascending order: a vertex's smaller neighbours are all seen before
        // any pair in which it is the smaller endpoint.
        for &(u, v) in pairs {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        let g = Graph { offsets, targets };
        debug_assert!(g.check_invariants());
        g
    }

    fn check_invariants(&self) -> bool {
        (0..self.vertex_count()).all(|v| {
            let adj = self.adj(v as VertexId);
            adj.windows(2).all(|w| w[0] < w[1])
                && adj.iter().all(|&w| w as usize != v && self.has_edge(w, v as VertexId))
        }) && self.targets.len() % 2 == 0
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbour slice; panics if `v` is out of range.
    #[inline]
    pub fn adj(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// `N_G(v)` with range checking.
    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.check_vertex(v as u64)?;
        Ok(self.adj(v))
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        // search the shorter list
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adj(a).binary_search(&b).is_ok()
    }

    /// Iterates each edge once as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count() as VertexId)
            .flat_map(move |u| self.adj(u).iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn check_vertex(&self, v: u64) -> Result<()> {
        if v >= self.vertex_count() as u64 {
            Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() })
        } else {
            Ok(())
        }
    }

    /// `(δ(G), Δ(G))`.
    pub fn degree_extremes(&self) -> Result<(usize, usize)> {
        if self.vertex_count() == 0 {
            return Err(Error::TooFewVertices { vertex_count: 0, required: 1 });
        }
        let degrees = (0..self.vertex_count() as VertexId).map(|v| self.degree(v));
        let (min, max) = degrees.fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)));
        Ok((min, max))
    }

    /// `|E| / C(|V|, 2)`.
    pub fn density(&self) -> Result<f64> {
        let n = self.vertex_count();
        if n < 2 {
            return Err(Error::TooFewVertices { vertex_count: n, required: 2 });
        }
        Ok(self.edge_count() as f64 / pairs_of(n) as f64)
    }

    /// Degree, density and connectivity statistics of the induced subgraph `G[S]`.
    pub fn induced_stats(&self, s: &VertexSubset) -> Result<SubgraphStats> {
        if let Some(&last) = s.members.last() {
            self.check_vertex(last as u64).map_err(|_| Error::InvalidSubset(format!("vertex {last} not in graph")))?;
        }
        let members = &s.members;
        let mut internal = vec![0usize; members.len()];
        for (i, &u) in members.iter().enumerate() {
            internal[i] = self.adj(u).iter().filter(|w| members.binary_search(w).is_ok()).count();
        }
        let twice_edges: usize = internal.iter().sum();
        let min = internal.iter().copied().min().unwrap_or(0);
        let max = internal.iter().copied().max().unwrap_or(0);
        let edges = twice_edges / 2;
        let density = if members.len() <= 1 { 1.0 } else { edges as f64 / pairs_of(members.len()) as f64 };
        Ok(SubgraphStats {
            size: members.len(),
            internal_edges: edges,
            min_internal_degree: min,
            max_internal_degree: max,
            density,
            connected: self.is_connected_within(members),
        })
    }

    fn is_connected_within(&self, members: &[VertexId]) -> bool {
        if members.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; members.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            for w in self.adj(members[i]) {
                if let Ok(j) = members.binary_search(w) {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        reached == members.len()
    }

    /// Core numbers and a degeneracy ordering by bucket peeling in `O(n + m)`.
    pub fn core_decomposition(&self) -> CoreDecomposition {
        let n = self.vertex_count();
        let mut degree: Vec<usize> = (0..n as VertexId).map(|v| self.degree(v)).collect();
        let max_degree = degree.iter().copied().max().unwrap_or(0);

        // bin[d] = start of the bucket of vertices with current degree d
        let mut bin = vec![0usize; max_degree + 2];
        for &d in &degree {
            bin[d + 1] += 1;
        }
        for d in 1..bin.len() {
            bin[d] += bin[d - 1];
        }
        let mut order = vec![0 as VertexId; n];
        let mut pos = vec![0usize; n];
        let mut fill = bin.clone();
        for v in 0..n {
            pos[v] = fill[degree[v]];
            order[pos[v]] = v as VertexId;
            fill[degree[v]] += 1;
        }

        for i in 0..n {
            let v = order[i] as usize;
            for &w in self.adj(v as VertexId) {
                let w = w as usize;
                if degree[w] > degree[v] {
                    let dw = degree[w];
                    let pw = pos[w];
                    let start = bin[dw];
                    let head = order[start] as usize;
                    if head != w {
                        order.swap(pw, start);
                        pos[head] = pw;
                        pos[w] = start;
                    }
                    bin[dw] += 1;
                    degree[w] -= 1;
                }
            }
        }
        let core: Vec<usize> = degree;
        let degeneracy = core.iter().copied().max().unwrap_or(0);
        CoreDecomposition { core, order, position: pos, degeneracy }
    }
}

#[inline]
pub(crate) fn pairs_of(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// Core numbers plus the peeling order that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub core: Vec<usize>,
    /// Vertices in removal order; each has at most `degeneracy` later neighbours.
    pub order: Vec<VertexId>,
    /// Inverse of `order`.
    pub position: Vec<usize>,
    pub degeneracy: usize,
}

/// A candidate community `S`, kept strictly sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSubset {
    members: Vec<VertexId>,
}

impl VertexSubset {
    /// Sorts `members` and validates them against a graph of `vertex_count` vertices.
    pub fn new(mut members: Vec<VertexId>, vertex_count: usize) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset(format!("duplicate vertex {}", w[0])));
        }
        if let Some(&last) = members.last() {
            if last as usize >= vertex_count {
                return Err(Error::InvalidSubset(format!("vertex {last} out of range for {vertex_count} vertices")));
            }
        }
        Ok(VertexSubset { members })
    }

    /// Caller guarantees strictly ascending ids.
    pub(crate) fn from_sorted(members: Vec<VertexId>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSubset { members }
    }

    pub fn members(&self) -> &[VertexId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn into_members(self) -> Vec<VertexId> {
        self.members
    }
}

/// Statistics of an induced subgraph `G[S]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubgraphStats {
    pub size: usize,
    pub internal_edges: usize,
    pub min_internal_degree: usize,
    pub max_internal_degree: usize,
    /// `internal_edges / C(size, 2)`, taken as 1 when `size <= 1`.
    pub density: f64,
    pub connected: bool,
}
