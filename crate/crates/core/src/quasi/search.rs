//! Branch-and-bound enumeration of locally maximal quasi-cliques.
//!
//! Every qualifying set is charged to its earliest vertex in degeneracy
//! order (the anchor). For one anchor the search walks a set-enumeration
//! tree over a local candidate set with incremental degree counters:
//!
//! * `deg_s[u]`: neighbours of `u` in the current set `S`
//! * `deg_sp[u]`: neighbours of `u` in `S ∪ P`, `P` the live candidates
//!
//! At each node the feasible size window of any qualifying superset is
//! bounded from both degree counters, candidates that cannot fit the window
//! are peeled, and an edge-count upper bound discards hopeless windows.
//!
//! Two members of a qualifying set of size `t` share at least
//! `2k(t) − t` neighbours in it, two more if they are not adjacent. This is
//! checked against the anchor for every candidate (counts kept incrementally
//! in `common_anchor`) and against every member when a candidate joins.
//!
//! Pivoting: let `k(s) = ⌈λ(s−1)⌉`, `s = |S|` and `hi` the largest feasible
//! size. Take `p ∉ S` with `deg_S(p) ≥ max(k(s+1), ⌈γs⌉)` such that every
//! member of `S` not adjacent to `p` already has `deg_S ≥ k(hi+1)`. Then
//! every qualifying `S'` with `S ⊆ S' ⊆ S ∪ (P ∩ N(p))` stays qualifying with
//! `p` added:
//!
//! * `p` gains one neighbour per added vertex and `k(t+1) − t` is
//!   non-increasing, so `deg_{S'}(p) ≥ k(|S'|+1)`;
//! * members adjacent to `p` gain one, and `k(t+1) ≤ k(t) + 1`;
//! * the others already meet `k(hi+1)`;
//! * the new edges number at least `⌈γ|S'|⌉`, and
//!   `⌈γ·C(t+1,2)⌉ ≤ ⌈γ·C(t,2)⌉ + ⌈γt⌉` with `t − ⌈γt⌉` non-decreasing.
//!
//! Such sets are never locally maximal, so only candidates outside `N(p)`
//! are branched on, and `S` itself is not reported. When `p` is adjacent to
//! all of `S` the conditions hold trivially; with `λ = γ = 1` this is
//! Bron–Kerbosch with Tomita pivoting.

use std::collections::VecDeque;

use crate::graph::{CoreDecomposition, Graph, VertexId};
use crate::metrics::QuasiCliqueParams;

const ABSENT: u32 = u32::MAX;

const OUT: u8 = 0;
const CAND: u8 = 1;
const IN_SET: u8 = 2;

/// Where the members of a qualifying set can lie relative to its anchor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Locality {
    /// Every qualifying set is a clique.
    Neighbors,
    /// Every qualifying set has diameter at most two.
    TwoHop,
    /// Connected sets of bounded size: within this many hops.
    Reach(usize),
    /// No structural bound; every later vertex is a candidate.
    Unbounded,
}

/// Search settings derived once per graph and parameter set.
pub(super) struct Plan<'g> {
    graph: &'g Graph,
    dec: CoreDecomposition,
    params: QuasiCliqueParams,
    /// Core number a vertex needs to sit in any qualifying set of two or more.
    min_core: u64,
    locality: Locality,
}

impl<'g> Plan<'g> {
    pub(super) fn new(graph: &'g Graph, params: QuasiCliqueParams) -> Self {
        let dec = graph.core_decomposition();
        let n = graph.vertex_count();
        let smallest = params.min_size.max(2);
        // A qualifying set of size s lies in the ⌈λ(s−1)⌉-core.
        let mut largest = smallest.saturating_sub(1);
        while largest < n && params.degree_threshold(largest + 1) <= dec.degeneracy as u64 {
            largest += 1;
        }
        let sizes = smallest..=largest;
        let locality = if sizes.clone().all(|s| params.degree_threshold(s) + 1 == s as u64) {
            Locality::Neighbors
        } else if sizes.clone().all(|s| 2 * params.degree_threshold(s) + 2 > s as u64) {
            // two non-adjacent members have ≥ 2⌈λ(s−1)⌉ neighbour slots among
            // the other s − 2 members, so they share one
            Locality::TwoHop
        } else if params.require_connected {
            Locality::Reach(largest.saturating_sub(1))
        } else {
            Locality::Unbounded
        };
        Plan { graph, params, min_core: params.degree_threshold(smallest), locality, dec }
    }

    pub(super) fn anchors(&self) -> &[VertexId] {
        &self.dec.order
    }
}

/// Per-worker buffers sized to the whole graph, reused across anchors.
pub(super) struct Scratch {
    local_of: Vec<u32>,
    ext_count: Vec<u32>,
    in_set: Vec<bool>,
    touched: Vec<VertexId>,
}

impl Scratch {
    pub(super) fn new(n: usize) -> Self {
        Scratch { local_of: vec![ABSENT; n], ext_count: vec![0; n], in_set: vec![false; n], touched: Vec::new() }
    }
}

/// Appends every locally maximal qualifying set anchored at `anchor` to `out`.
pub(super) fn search_anchor(plan: &Plan<'_>, scratch: &mut Scratch, anchor: VertexId, out: &mut Vec<Vec<VertexId>>) {
    let g = plan.graph;
    if (plan.dec.core[anchor as usize] as u64) < plan.min_core {
        // only the singleton can qualify, and only an isolated one is maximal
        if plan.params.min_size <= 1 && g.degree(anchor) == 0 {
            out.push(vec![anchor]);
        }
        return;
    }

    let (globals, candidate_count) = collect_local_vertices(plan, scratch, anchor);
    let mut search = LocalSearch::new(plan, scratch, globals, candidate_count, out);
    let candidates: Vec<u32> = (1..=candidate_count as u32).collect();
    search.node(&candidates);
    search.release();
}

/// Local vertex list: the anchor, then candidates, then the anchor's other
/// neighbours (kept only as pivots). Marks `local_of` for all of them.
fn collect_local_vertices(plan: &Plan<'_>, scratch: &mut Scratch, anchor: VertexId) -> (Vec<VertexId>, usize) {
    let g = plan.graph;
    let position = &plan.dec.position;
    let anchor_pos = position[anchor as usize];
    let eligible = |u: VertexId| position[u as usize] > anchor_pos && plan.dec.core[u as usize] as u64 >= plan.min_core;
    let local_of = &mut scratch.local_of;
    let mut globals = vec![anchor];
    local_of[anchor as usize] = 0;
    let push = |u: VertexId, globals: &mut Vec<VertexId>, local_of: &mut Vec<u32>| {
        if local_of[u as usize] == ABSENT {
            local_of[u as usize] = globals.len() as u32;
            globals.push(u);
            true
        } else {
            false
        }
    };

    match plan.locality {
        Locality::Neighbors | Locality::TwoHop => {
            for &u in g.adj(anchor) {
                if eligible(u) {
                    push(u, &mut globals, local_of);
                }
            }
            if plan.locality == Locality::TwoHop {
                let first_ring = globals.len();
                for i in 1..first_ring {
                    let w = globals[i];
                    for &u in g.adj(w) {
                        if eligible(u) {
                            push(u, &mut globals, local_of);
                        }
                    }
                }
            }
        }
        Locality::Reach(depth) => {
            let mut frontier = VecDeque::from([(anchor, 0usize)]);
            while let Some((w, d)) = frontier.pop_front() {
                if d == depth {
                    continue;
                }
                for &u in g.adj(w) {
                    if eligible(u) && push(u, &mut globals, local_of) {
                        frontier.push_back((u, d + 1));
                    }
                }
            }
        }
        Locality::Unbounded => {
            for &u in &plan.dec.order[anchor_pos + 1..] {
                if eligible(u) {
                    push(u, &mut globals, local_of);
                }
            }
        }
    }
    let candidate_count = globals.len() - 1;
    for &u in g.adj(anchor) {
        push(u, &mut globals, local_of);
    }
    (globals, candidate_count)
}

struct LocalSearch<'p, 'g, 's, 'o> {
    plan: &'p Plan<'g>,
    scratch: &'s mut Scratch,
    out: &'o mut Vec<Vec<VertexId>>,
    globals: Vec<VertexId>,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    state: Vec<u8>,
    deg_s: Vec<u32>,
    deg_sp: Vec<u32>,
    members: Vec<u32>,
    set_edges: u64,
    removed: Vec<u32>,
    stamp: Vec<u32>,
    stamp_token: u32,
    weak_adj: Vec<u32>,
    /// neighbours of the anchor in `S ∪ P` adjacent to each local vertex
    common_anchor: Vec<u32>,
    anchor_adj: Vec<bool>,
}

impl<'p, 'g, 's, 'o> LocalSearch<'p, 'g, 's, 'o> {
    fn new(
        plan: &'p Plan<'g>,
        scratch: &'s mut Scratch,
        globals: Vec<VertexId>,
        candidate_count: usize,
        out: &'o mut Vec<Vec<VertexId>>,
    ) -> Self {
        let g = plan.graph;
        let len = globals.len();
        let mut offsets = Vec::with_capacity(len + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for &u in &globals {
            targets.extend(g.adj(u).iter().map(|&w| scratch.local_of[w as usize]).filter(|&l| l != ABSENT));
            offsets.push(targets.len());
        }
        let mut state = vec![OUT; len];
        state[0] = IN_SET;
        state[1..=candidate_count].fill(CAND);
        let mut search = LocalSearch {
            plan,
            scratch,
            out,
            globals,
            offsets,
            targets,
            state,
            deg_s: vec![0; len],
            deg_sp: vec![0; len],
            members: vec![0],
            set_edges: 0,
            removed: Vec::new(),
            stamp: vec![0; len],
            stamp_token: 0,
            weak_adj: vec![0; len],
            common_anchor: vec![0; len],
            anchor_adj: vec![false; len],
        };
        for i in search.offsets[0]..search.offsets[1] {
            let b = search.targets[i] as usize;
            search.anchor_adj[b] = true;
        }
        for a in 0..=candidate_count {
            for i in search.offsets[a]..search.offsets[a + 1] {
                let b = search.targets[i] as usize;
                search.deg_sp[b] += 1;
                if a == 0 {
                    search.deg_s[b] += 1;
                }
                if search.anchor_adj[a] {
                    search.common_anchor[b] += 1;
                }
            }
        }
        search
    }

    fn release(self) {
        for &u in &self.globals {
            self.scratch.local_of[u as usize] = ABSENT;
        }
    }

    #[inline]
    fn adj(&self, a: u32) -> &[u32] {
        &self.targets[self.offsets[a as usize]..self.offsets[a as usize + 1]]
    }

    #[inline]
    fn k(&self, size: usize) -> u64 {
        self.plan.params.degree_threshold(size)
    }

    fn node(&mut self, parent_candidates: &[u32]) {
        let mark = self.removed.len();
        let mut cands: Vec<u32> =
            parent_candidates.iter().copied().filter(|&a| self.state[a as usize] == CAND).collect();
        if let Some((lo, hi)) = self.tighten(&mut cands) {
            if self.edges_feasible(&cands, lo, hi) {
                let pivot = self.choose_pivot(hi);
                if pivot.is_none() {
                    self.try_emit();
                }
                let branch: Vec<u32> = match pivot {
                    Some(p) => {
                        self.stamp_token += 1;
                        let token = self.stamp_token;
                        for i in self.offsets[p as usize]..self.offsets[p as usize + 1] {
                            let b = self.targets[i] as usize;
                            self.stamp[b] = token;
                        }
                        cands.iter().copied().filter(|&a| self.stamp[a as usize] != token).collect()
                    }
                    None => cands.clone(),
                };
                for c in branch {
                    if self.shares_enough_neighbours(c, hi) {
                        self.move_into_set(c);
                        self.node(&cands);
                        self.move_out_of_set(c);
                    }
                    self.drop_candidate(c);
                }
            }
        }
        self.restore(mark);
    }

    /// Shrinks the candidate list until stable; returns the window of sizes
    /// a qualifying superset of `S` inside `S ∪ P` could have.
    fn tighten(&mut self, cands: &mut Vec<u32>) -> Option<(usize, usize)> {
        let params = self.plan.params;
        loop {
            let s = self.members.len();
            let (min_sp, min_s) = self.members.iter().fold((u32::MAX, u32::MAX), |(a, b), &x| {
                (a.min(self.deg_sp[x as usize]), b.min(self.deg_s[x as usize]))
            });
            let mut hi = s + cands.len();
            if let Some(cap) = params.lambda.floor_div(min_sp as u64) {
                hi = hi.min(cap.saturating_add(1).min(usize::MAX as u64) as usize);
            }
            // members can gain at most one internal neighbour per added vertex,
            // and size − ⌈λ(size−1)⌉ never decreases with size
            let deficit = (s - min_s as usize) as u64;
            let mut lo = params.min_size.max(s);
            while lo <= hi && (lo as u64) - self.k(lo) < deficit {
                lo += 1;
            }
            if lo > hi {
                return None;
            }

            let need_sp = self.k(lo.max(s + 1));
            let need_hi = self.k(hi);
            let room = (hi as u64).saturating_sub(s as u64 + 1);
            let shared = self.min_shared(lo.max(s + 1), hi);
            let before = cands.len();
            let mut i = 0;
            while i < cands.len() {
                let r = cands[i] as usize;
                let fits = hi > s
                    && self.deg_sp[r] as u64 >= need_sp
                    && self.deg_s[r] as u64 + room >= need_hi
                    && self.common_anchor[r] as i64 >= shared + if self.anchor_adj[r] { 0 } else { 2 };
                if fits {
                    i += 1;
                } else {
                    let r = cands.swap_remove(i);
                    self.drop_candidate(r);
                }
            }
            if cands.len() == before {
                return Some((lo, hi));
            }
        }
    }

    /// Upper-bounds `2·e(S')` for each size in the window and checks it
    /// against the edge threshold.
    fn edges_feasible(&self, cands: &[u32], lo: usize, hi: usize) -> bool {
        let s = self.members.len();
        let mut gains: Vec<u64> = Vec::with_capacity(cands.len());
        for size in lo..=hi {
            let t = (size - s) as u64;
            let need = self.k(size);
            let mut bound: u64 = self
                .members
                .iter()
                .map(|&x| (self.deg_sp[x as usize] as u64).min(self.deg_s[x as usize] as u64 + t))
                .sum();
            if t > 0 {
                gains.clear();
                gains.extend(
                    cands
                        .iter()
                        .map(|&r| (self.deg_sp[r as usize] as u64).min(self.deg_s[r as usize] as u64 + t - 1))
                        .filter(|&v| v >= need),
                );
                let t = t as usize;
                if gains.len() < t {
                    continue;
                }
                if gains.len() > t {
                    gains.select_nth_unstable_by(t - 1, |a, b| b.cmp(a));
                }
                bound += gains[..t].iter().sum::<u64>();
            }
            if bound >= 2 * self.plan.params.edge_threshold(size) {
                return true;
            }
        }
        false
    }

    /// Smallest `2k(t) − t` over sizes `t` in `lo..=hi`.
    fn min_shared(&self, lo: usize, hi: usize) -> i64 {
        (lo..=hi).map(|t| 2 * self.k(t) as i64 - t as i64).min().unwrap_or(i64::MAX)
    }

    /// Whether candidate `c` shares enough neighbours in `S ∪ P` with every
    /// member for some size in the window up to `hi`.
    fn shares_enough_neighbours(&mut self, c: u32, hi: usize) -> bool {
        let s = self.members.len();
        if hi <= s {
            return false;
        }
        let shared = self.min_shared(s + 1, hi);
        if shared <= 0 {
            return true;
        }
        self.stamp_token += 1;
        let token = self.stamp_token;
        for i in self.offsets[c as usize]..self.offsets[c as usize + 1] {
            let b = self.targets[i] as usize;
            if self.state[b] != OUT {
                self.stamp[b] = token;
            }
        }
        self.members.iter().all(|&x| {
            let adjacent = self.stamp[x as usize] == token;
            let common = self.adj(x).iter().filter(|&&b| self.stamp[b as usize] == token).count() as i64;
            common >= shared + if adjacent { 0 } else { 2 }
        })
    }

    /// A pivot as described in the module docs with most candidate
    /// neighbours; lowest local id on ties.
    fn choose_pivot(&mut self, hi: usize) -> Option<u32> {
        let params = self.plan.params;
        let s = self.members.len();
        let need = self.k(s + 1).max(params.gamma.ceil_mul(s as u64)) as u32;
        let settled = self.k(hi + 1) as u32;
        // members a pivot must be adjacent to
        self.stamp_token += 1;
        let token = self.stamp_token;
        let mut weak = 0u32;
        for idx in 0..s {
            let x = self.members[idx];
            if self.deg_s[x as usize] < settled {
                weak += 1;
                for i in self.offsets[x as usize]..self.offsets[x as usize + 1] {
                    let b = self.targets[i] as usize;
                    if self.stamp[b] != token {
                        self.stamp[b] = token;
                        self.weak_adj[b] = 0;
                    }
                    self.weak_adj[b] += 1;
                }
            }
        }
        let mut best: Option<(u32, u32)> = None;
        for u in 0..self.globals.len() {
            if self.state[u] == IN_SET || self.deg_s[u] < need {
                continue;
            }
            let covers_weak = weak == 0 || (self.stamp[u] == token && self.weak_adj[u] == weak);
            if !covers_weak {
                continue;
            }
            let score = self.deg_sp[u] - self.deg_s[u];
            if best.is_none_or(|(_, b)| score > b) {
                best = Some((u as u32, score));
            }
        }
        best.map(|(u, _)| u)
    }

    fn try_emit(&mut self) {
        let params = self.plan.params;
        let s = self.members.len();
        let min_s = self.members.iter().map(|&x| self.deg_s[x as usize]).min().unwrap_or(0);
        if !params.accepts(s, min_s as usize, self.set_edges as usize, true) {
            return;
        }
        if params.require_connected && !self.set_connected() {
            return;
        }
        if !self.globally_maximal(min_s) {
            return;
        }
        let mut set: Vec<VertexId> = self.members.iter().map(|&a| self.globals[a as usize]).collect();
        set.sort_unstable();
        self.out.push(set);
    }

    fn set_connected(&self) -> bool {
        let mut seen = vec![false; self.globals.len()];
        let mut stack = vec![self.members[0]];
        seen[self.members[0] as usize] = true;
        let mut reached = 1;
        while let Some(a) = stack.pop() {
            for &b in self.adj(a) {
                if self.state[b as usize] == IN_SET && !seen[b as usize] {
                    seen[b as usize] = true;
                    reached += 1;
                    stack.push(b);
                }
            }
        }
        reached == self.members.len()
    }

    /// No single vertex anywhere in the graph extends `S` to a qualifying set.
    /// Only neighbours of `S` can: anything else would have internal degree
    /// zero, below `⌈λ|S|⌉ ≥ 1`.
    fn globally_maximal(&mut self, min_s: u32) -> bool {
        let g = self.plan.graph;
        let params = self.plan.params;
        let s = self.members.len();
        let need_degree = params.degree_threshold(s + 1);
        let need_edges = params.edge_threshold(s + 1);
        if (min_s as u64) + 1 < need_degree {
            return true;
        }
        // members that must be adjacent to the added vertex
        let critical: Vec<VertexId> = self
            .members
            .iter()
            .filter(|&&x| (self.deg_s[x as usize] as u64) < need_degree)
            .map(|&x| self.globals[x as usize])
            .collect();

        let scratch = &mut *self.scratch;
        for &a in &self.members {
            scratch.in_set[self.globals[a as usize] as usize] = true;
        }
        for &a in &self.members {
            for &w in g.adj(self.globals[a as usize]) {
                let wi = w as usize;
                if !scratch.in_set[wi] {
                    if scratch.ext_count[wi] == 0 {
                        scratch.touched.push(w);
                    }
                    scratch.ext_count[wi] += 1;
                }
            }
        }
        let extendable = scratch.touched.iter().any(|&w| {
            let c = scratch.ext_count[w as usize] as u64;
            c >= need_degree && self.set_edges + c >= need_edges && critical.iter().all(|&x| g.has_edge(x, w))
        });
        for &w in &scratch.touched {
            scratch.ext_count[w as usize] = 0;
        }
        scratch.touched.clear();
        for &a in &self.members {
            scratch.in_set[self.globals[a as usize] as usize] = false;
        }
        !extendable
    }

    fn move_into_set(&mut self, c: u32) {
        self.state[c as usize] = IN_SET;
        self.members.push(c);
        self.set_edges += self.deg_s[c as usize] as u64;
        for i in self.offsets[c as usize]..self.offsets[c as usize + 1] {
            self.deg_s[self.targets[i] as usize] += 1;
        }
    }

    fn move_out_of_set(&mut self, c: u32) {
        for i in self.offsets[c as usize]..self.offsets[c as usize + 1] {
            self.deg_s[self.targets[i] as usize] -= 1;
        }
        self.set_edges -= self.deg_s[c as usize] as u64;
        self.members.pop();
        self.state[c as usize] = CAND;
    }

    fn drop_candidate(&mut self, c: u32) {
        self.state[c as usize] = OUT;
        let near_anchor = self.anchor_adj[c as usize];
        for i in self.offsets[c as usize]..self.offsets[c as usize + 1] {
            let b = self.targets[i] as usize;
            self.deg_sp[b] -= 1;
            if near_anchor {
                self.common_anchor[b] -= 1;
            }
        }
        self.removed.push(c);
    }

    fn restore(&mut self, mark: usize) {
        while self.removed.len() > mark {
            let c = self.removed.pop().unwrap();
            self.state[c as usize] = CAND;
            let near_anchor = self.anchor_adj[c as usize];
            for i in self.offsets[c as usize]..self.offsets[c as usize + 1] {
                let b = self.targets[i] as usize;
                self.deg_sp[b] += 1;
                if near_anchor {
                    self.common_anchor[b] += 1;
                }
            }
        }
    }
}
