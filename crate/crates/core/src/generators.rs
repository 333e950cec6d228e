//! Seeded synthetic graphs.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, which is
//! portable across platforms, so a [`GeneratorSpec`] regenerates the same
//! graph anywhere.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::community::CommunitySet;
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::{Graph, VertexId, VertexSubset};
use crate::metrics::{Partition, QuasiCliqueParams};

/// One planted quasi-clique: its size and the `(λ, γ)` it must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantSpec {
    pub size: usize,
    pub lambda: Fraction,
    pub gamma: Fraction,
}

/// Full parameter record of a generator call, seed included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Gnp { n: usize, p: f64, seed: u64 },
    Config { degrees: Vec<usize>, seed: u64, max_retries: u32 },
    Ring { cliques: usize, size: usize },
    Planted { n: usize, background_p: f64, plants: Vec<PlantSpec>, seed: u64 },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<GeneratorOutput> {
        match self {
            GeneratorSpec::Gnp { n, p, seed } => gnp(*n, *p, *seed),
            GeneratorSpec::Config { degrees, seed, max_retries } => configuration_model(degrees, *seed, *max_retries),
            GeneratorSpec::Ring { cliques, size } => ring_of_cliques(*cliques, *size),
            GeneratorSpec::Planted { n, background_p, plants, seed } => {
                planted_quasi_clique(*n, *background_p, plants, *seed)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratorOutput {
    pub graph: Graph,
    pub ground_truth: Option<CommunitySet>,
    pub natural_partition: Option<Partition>,
    pub spec_echo: GeneratorSpec,
}

/// Erdős–Rényi `G(n, p)`: each pair independently with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<GeneratorOutput> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidGenerator(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = sample_pairs(n, p, &mut rng);
    Ok(GeneratorOutput {
        graph: Graph::from_edges(n, edges)?,
        ground_truth: None,
        natural_partition: None,
        spec_echo: GeneratorSpec::Gnp { n, p, seed },
    })
}

/// Independent pair sampling by geometric skipping over the lower triangle,
/// `O(n + m)` expected time.
fn sample_pairs(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Vec<(VertexId, VertexId)> {
    let mut edges = Vec::new();
    if n < 2 || p <= 0.0 {
        return edges;
    }
    if p >= 1.0 {
        for v in 1..n as VertexId {
            edges.extend((0..v).map(|w| (w, v)));
        }
        return edges;
    }
    let log_q = (1.0 - p).ln();
    let mut v: usize = 1;
    let mut w: i64 = -1;
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w += 1 + if skip.is_finite() { skip.min(n as f64 * n as f64) as i64 } else { 0 };
        while w >= v as i64 && v < n {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as VertexId, v as VertexId));
        }
    }
    edges
}

/// Erdős–Gallai test for a simple-graph degree sequence.
pub fn is_graphical(degrees: &[usize]) -> bool {
    let mut d: Vec<u64> = degrees.iter().map(|&x| x as u64).collect();
    if d.iter().sum::<u64>() % 2 == 1 {
        return false;
    }
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len() as u64;
    let mut prefix = 0u64;
    for k in 1..=n {
        prefix += d[(k - 1) as usize];
        let tail: u64 = d[k as usize..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

/// Simple graph with exactly the given degree sequence.
///
/// Stubs are paired uniformly at random; self-loops and repeated pairs are
/// then repaired by double-edge swaps against random edges, which keep every
/// degree fixed. An attempt that cannot be repaired is restarted, up to
/// `max_retries` attempts in total.
pub fn configuration_model(degrees: &[usize], seed: u64, max_retries: u32) -> Result<GeneratorOutput> {
    let sum: u64 = degrees.iter().map(|&d| d as u64).sum();
    if sum % 2 == 1 {
        return Err(Error::OddDegreeSum { sum });
    }
    if !is_graphical(degrees) {
        return Err(Error::NotGraphical);
    }
    let n = degrees.len();
    let spec_echo = GeneratorSpec::Config { degrees: degrees.to_vec(), seed, max_retries };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stubs: Vec<VertexId> =
        degrees.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v as VertexId, d)).collect();

    for _ in 0..max_retries {
        let mut shuffled = stubs.clone();
        shuffled.shuffle(&mut rng);
        let mut edges: Vec<(VertexId, VertexId)> = shuffled.chunks_exact(2).map(|c| ordered(c[0], c[1])).collect();
        if repair(&mut edges, &mut rng) {
            let graph = Graph::from_edges(n, edges)?;
            for (v, &d) in degrees.iter().enumerate() {
                assert_eq!(graph.degree(v as VertexId), d, "degree sequence not preserved");
            }
            return Ok(GeneratorOutput { graph, ground_truth: None, natural_partition: None, spec_echo });
        }
    }
    Err(Error::RetriesExhausted { attempts: max_retries })
}

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Swaps away self-loops and duplicates; false if the swap budget runs out.
fn repair(edges: &mut [(VertexId, VertexId)], rng: &mut ChaCha8Rng) -> bool {
    let mut present: HashSet<(VertexId, VertexId)> = HashSet::with_capacity(edges.len());
    let mut bad = Vec::new();
    for (i, &e) in edges.iter().enumerate() {
        if e.0 == e.1 || !present.insert(e) {
            bad.push(i);
        }
    }
    let budget = 100 * edges.len() + 100;
    let mut swaps = 0;
    while let Some(&i) = bad.last() {
        if swaps >= budget {
            return false;
        }
        swaps += 1;
        let j = rng.random_range(0..edges.len());
        if j == i {
            continue;
        }
        let (a, b) = edges[i];
        let (c, d) = if rng.random_bool(0.5) { edges[j] } else { (edges[j].1, edges[j].0) };
        let (e1, e2) = (ordered(a, c), ordered(b, d));
        // edge j must itself be a good edge, and both replacements must be new
        if bad.contains(&j)
            || e1.0 == e1.1
            || e2.0 == e2.1
            || e1 == e2
            || present.contains(&e1)
            || present.contains(&e2)
        {
            continue;
        }
        present.remove(&edges[j]);
        // edge i's key is in `present` only if another copy owns it; leave it
        edges[i] = e1;
        edges[j] = e2;
        present.insert(e1);
        present.insert(e2);
        bad.pop();
    }
    true
}

/// `cliques` disjoint copies of `K_size` joined in a cycle: the last vertex of
/// clique `i` is adjacent to the first vertex of clique `i + 1`.
pub fn ring_of_cliques(cliques: usize, size: usize) -> Result<GeneratorOutput> {
    if cliques < 3 || size < 3 {
        return Err(Error::InvalidGenerator(format!(
            "ring of cliques needs at least 3 cliques of size at least 3, got {cliques} of size {size}"
        )));
    }
    let n = cliques * size;
    let mut edges = Vec::with_capacity(cliques * (size * (size - 1) / 2 + 1));
    for c in 0..cliques {
        let base = (c * size) as VertexId;
        for u in 0..size as VertexId {
            for v in u + 1..size as VertexId {
                edges.push((base + u, base + v));
            }
        }
        let next = (((c + 1) % cliques) * size) as VertexId;
        edges.push((base + size as VertexId - 1, next));
    }
    let graph = Graph::from_edges(n, edges)?;
    let blocks: Vec<u32> = (0..n).map(|v| (v / size) as u32).collect();
    let truth = (0..cliques).map(|c| {
        let base = (c * size) as VertexId;
        VertexSubset::new((base..base + size as VertexId).collect(), n).expect("in range")
    });
    Ok(GeneratorOutput {
        graph,
        ground_truth: Some(CommunitySet::new(truth)),
        natural_partition: Some(Partition::new(blocks)?),
        spec_echo: GeneratorSpec::Ring { cliques, size },
    })
}

/// Background `G(n, background_p)` with quasi-cliques planted on consecutive
/// lowest-numbered vertex blocks.
///
/// Inside each plant, edges are added (never removed) until every member has
/// at least `⌈λ(size−1)⌉` internal neighbours and the plant holds at least
/// `⌈γ·C(size,2)⌉` edges. Degree repair always links a least-connected member
/// to a least-connected non-neighbour, ties broken at random.
pub fn planted_quasi_clique(n: usize, background_p: f64, plants: &[PlantSpec], seed: u64) -> Result<GeneratorOutput> {
    if !(0.0..1.0).contains(&background_p) {
        return Err(Error::InvalidGenerator(format!("background probability {background_p} outside [0, 1)")));
    }
    let total: usize = plants.iter().map(|p| p.size).sum();
    if total > n {
        return Err(Error::InvalidGenerator(format!("plants need {total} vertices, graph has {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = sample_pairs(n, background_p, &mut rng);
    let mut present: HashSet<(VertexId, VertexId)> = edges.iter().copied().collect();

    let mut truth = Vec::with_capacity(plants.len());
    let mut start = 0usize;
    for plant in plants {
        if plant.size == 0 {
            return Err(Error::InvalidGenerator("plant of size 0".into()));
        }
        let params =
            QuasiCliqueParams { lambda: plant.lambda, gamma: plant.gamma, min_size: 1, require_connected: false }
                .validated()
                .map_err(|e| Error::InvalidGenerator(e.to_string()))?;
        let members: Vec<VertexId> = (start as VertexId..(start + plant.size) as VertexId).collect();
        densify(&members, &params, &mut present, &mut edges, &mut rng);
        truth.push(VertexSubset::new(members, n)?);
        start += plant.size;
    }
    Ok(GeneratorOutput {
        graph: Graph::from_edges(n, edges)?,
        ground_truth: Some(CommunitySet::new(truth)),
        natural_partition: None,
        spec_echo: GeneratorSpec::Planted { n, background_p, plants: plants.to_vec(), seed },
    })
}

fn densify(
    members: &[VertexId],
    params: &QuasiCliqueParams,
    present: &mut HashSet<(VertexId, VertexId)>,
    edges: &mut Vec<(VertexId, VertexId)>,
    rng: &mut ChaCha8Rng,
) {
    let size = members.len();
    let base = members[0];
    let linked = |present: &HashSet<(VertexId, VertexId)>, a: usize, b: usize| {
        present.contains(&ordered(base + a as VertexId, base + b as VertexId))
    };
    let mut degree: Vec<u64> =
        (0..size).map(|a| (0..size).filter(|&b| b != a && linked(present, a, b)).count() as u64).collect();
    let mut internal: u64 = degree.iter().sum::<u64>() / 2;
    let mut add = |a: usize, b: usize, degree: &mut Vec<u64>, present: &mut HashSet<_>| {
        let e = ordered(base + a as VertexId, base + b as VertexId);
        present.insert(e);
        edges.push(e);
        degree[a] += 1;
        degree[b] += 1;
    };

    let need_degree = params.degree_threshold(size);
    loop {
        let a = (0..size).min_by_key(|&a| (degree[a], a)).expect("non-empty plant");
        if degree[a] >= need_degree {
            break;
        }
        let open: Vec<usize> = (0..size).filter(|&b| b != a && !linked(present, a, b)).collect();
        let lowest = open.iter().map(|&b| degree[b]).min().expect("deficient member has a non-neighbour");
        let ties: Vec<usize> = open.into_iter().filter(|&b| degree[b] == lowest).collect();
        let b = ties[rng.random_range(0..ties.len())];
        add(a, b, &mut degree, present);
        internal += 1;
    }

    let need_edges = params.edge_threshold(size);
    if internal < need_edges {
        let mut missing: Vec<(usize, usize)> = (0..size)
            .flat_map(|a| (a + 1..size).map(move |b| (a, b)))
            .filter(|&(a, b)| !linked(present, a, b))
            .collect();
        missing.shuffle(rng);
        for (a, b) in missing.into_iter().take((need_edges - internal) as usize) {
            add(a, b, &mut degree, present);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{is_quasi_clique, modularity};

    fn frac(s: &str) -> Fraction {
        s.parse().unwrap()
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        assert_eq!(gnp(10, 0.0, 1).unwrap().graph.edge_count(), 0);
        assert_eq!(gnp(10, 1.0, 1).unwrap().graph.edge_count(), 45);
        let a = gnp(200, 0.05, 7).unwrap().graph;
        let b = gnp(200, 0.05, 7).unwrap().graph;
        let c = gnp(200, 0.05, 8).unwrap().graph;
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(gnp(3, 1.5, 0).is_err());
    }

    #[test]
    fn gnp_edge_count_near_expectation() {
        let n = 2000;
        let p = 0.01;
        let m = gnp(n, p, 3).unwrap().graph.edge_count() as f64;
        let expect = p * (n * (n - 1) / 2) as f64;
        let sd = (expect * (1.0 - p)).sqrt();
        assert!((m - expect).abs() < 5.0 * sd, "m = {m}, expected {expect}");
    }

    #[test]
    fn configuration_model_small_cases() {
        let single = configuration_model(&[1, 1], 0, 10).unwrap().graph;
        assert_eq!(single.edges().collect::<Vec<_>>(), vec![(0, 1)]);
        let tri = configuration_model(&[2, 2, 2], 5, 10).unwrap().graph;
        assert_eq!(tri.edge_count(), 3);
        assert!(matches!(configuration_model(&[3, 3, 3, 1], 0, 10), Err(Error::NotGraphical)));
        assert!(matches!(configuration_model(&[1, 1, 1], 0, 10), Err(Error::OddDegreeSum { sum: 3 })));
    }

    /// Every labelled simple graph on 4 vertices, as a set of degree sequences.
    fn realizable_sequences_on_four() -> HashSet<Vec<usize>> {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| {
                let mut d = vec![0; 4];
                for (i, &(a, b)) in pairs.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        d[a] += 1;
                        d[b] += 1;
                    }
                }
                d
            })
            .collect()
    }

    #[test]
    fn erdos_gallai_agrees_with_enumeration_on_four_vertices() {
        let realizable = realizable_sequences_on_four();
        assert!(!realizable.contains(&vec![3, 3, 3, 1]));
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    for d in 0..=4 {
                        let seq = vec![a, b, c, d];
                        assert_eq!(is_graphical(&seq), realizable.contains(&seq), "{seq:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn configuration_model_preserves_degrees() {
        let degrees: Vec<usize> = (0..300).map(|i| 1 + (i * 7919) % 9).collect::<Vec<_>>();
        let mut degrees = degrees;
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees[0] += 1;
        }
        let out = configuration_model(&degrees, 11, 20).unwrap();
        for (v, &d) in degrees.iter().enumerate() {
            assert_eq!(out.graph.degree(v as u32), d);
        }
        let again = configuration_model(&degrees, 11, 20).unwrap();
        assert_eq!(out.graph, again.graph);
    }

    #[test]
    fn ring_counts() {
        let r = ring_of_cliques(3, 3).unwrap();
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (9, 12));
        let r = ring_of_cliques(30, 5).unwrap();
        assert_eq!((r.graph.vertex_count(), r.graph.edge_count()), (150, 330));
        let natural = r.natural_partition.unwrap();
        for block in natural.blocks() {
            let s = VertexSubset::new(block, 150).unwrap();
            let st = r.graph.induced_stats(&s).unwrap();
            assert_eq!(st.density, 1.0);
        }
        assert!(ring_of_cliques(2, 5).is_err());
        assert!(ring_of_cliques(5, 2).is_err());
    }

    #[test]
    fn ring_modularity_closed_form() {
        for (l, c) in [(3usize, 3usize), (10, 4), (30, 5)] {
            let r = ring_of_cliques(l, c).unwrap();
            let q = modularity(&r.graph, r.natural_partition.as_ref().unwrap()).unwrap().q;
            let e = (c * (c - 1) / 2) as f64;
            let d = (c * (c - 1) + 2) as f64;
            let m = l as f64 * (e + 1.0);
            let closed = l as f64 * (e / m - (d / (2.0 * m)).powi(2));
            assert!((q - closed).abs() < 1e-12, "l={l} c={c}");
        }
    }

    #[test]
    fn planted_clique_on_empty_background() {
        let plant = PlantSpec { size: 5, lambda: Fraction::ONE, gamma: Fraction::ONE };
        let out = planted_quasi_clique(12, 0.0, &[plant], 3).unwrap();
        assert_eq!(out.graph.edge_count(), 10);
        assert!(out.graph.edges().all(|(u, v)| u < 5 && v < 5));
    }

    #[test]
    fn plants_satisfy_their_parameters() {
        let plants = [
            PlantSpec { size: 8, lambda: frac("0.75"), gamma: frac("0.8") },
            PlantSpec { size: 6, lambda: frac("0.75"), gamma: frac("0.8") },
            PlantSpec { size: 10, lambda: frac("0.5"), gamma: frac("0.6") },
        ];
        for seed in 0..20 {
            let out = planted_quasi_clique(100, 0.05, &plants, seed).unwrap();
            for s in out.ground_truth.as_ref().unwrap() {
                let plant = plants.iter().find(|p| p.size == s.len()).unwrap();
                let params = QuasiCliqueParams::new(plant.lambda, plant.gamma).unwrap();
                assert!(is_quasi_clique(&out.graph, s, &params).unwrap().0, "seed {seed}");
            }
        }
    }

    #[test]
    fn planted_rejects_overflow() {
        let plant = PlantSpec { size: 8, lambda: Fraction::ONE, gamma: Fraction::ONE };
        assert!(planted_quasi_clique(10, 0.1, &[plant, plant], 0).is_err());
        assert!(planted_quasi_clique(10, 1.0, &[plant], 0).is_err());
    }

    #[test]
    fn spec_echo_regenerates() {
        let specs = [
            GeneratorSpec::Gnp { n: 50, p: 0.1, seed: 9 },
            GeneratorSpec::Ring { cliques: 4, size: 3 },
            GeneratorSpec::Config { degrees: vec![2, 2, 2, 2], seed: 1, max_retries: 10 },
            GeneratorSpec::Planted {
                n: 30,
                background_p: 0.1,
                plants: vec![PlantSpec { size: 6, lambda: frac("0.8"), gamma: frac("0.9") }],
                seed: 4,
            },
        ];
        for spec in specs {
            let first = spec.generate().unwrap();
            assert_eq!(first.spec_echo, spec);
            let json = serde_json::to_string(&first.spec_echo).unwrap();
            let parsed: GeneratorSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(parsed.generate().unwrap().graph, first.graph);
        }
    }
}
