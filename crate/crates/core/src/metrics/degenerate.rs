use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::modularity::modularity;
use super::partition::Partition;
use crate::error::{Error, Result};
use crate::graph::Graph;

const MAX_STEPS_PER_ATTEMPT: usize = 3;

/// Samples partitions whose modularity is within `epsilon` of `reference`.
///
/// Each attempt applies one to three random perturbations to the reference:
/// moving a vertex to another (or a fresh) block, or merging two blocks. A
/// candidate is kept when it differs from the reference and from earlier
/// finds and `Q ≥ Q(reference) − epsilon`. The comparison is exact
/// when `epsilon` is zero. At most `budget` partitions are returned, from at
/// most `64·budget + 256` attempts.
pub fn degenerate_partitions(
    g: &Graph,
    reference: &Partition,
    epsilon: f64,
    budget: usize,
    seed: u64,
) -> Result<Vec<(Partition, f64)>> {
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(Error::InvalidParams(format!("epsilon must be non-negative, got {epsilon}")));
    }
    if budget == 0 {
        return Ok(Vec::new());
    }
    let reference_report = modularity(g, reference)?;
    let (reference_num, denom) = reference_report.exact();
    let slack = epsilon * denom as f64;
    let reference_key = reference.canonical();
    let mut seen: HashSet<Partition> = HashSet::from([reference_key]);

    let n = g.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    let attempts = budget.saturating_mul(64).saturating_add(256);
    for _ in 0..attempts {
        if found.len() >= budget {
            break;
        }
        let mut labels: Vec<u32> = reference.block_of().to_vec();
        let mut block_count = reference.block_count() as u32;
        let steps = rng.random_range(1..=MAX_STEPS_PER_ATTEMPT);
        for _ in 0..steps {
            if block_count >= 2 && rng.random_bool(0.5) {
                let a = rng.random_range(0..block_count);
                let mut b = rng.random_range(0..block_count - 1);
                if b >= a {
                    b += 1;
                }
                for l in labels.iter_mut().filter(|l| **l == b) {
                    *l = a;
                }
            } else if n > 0 {
                let v = rng.random_range(0..n);
                // any existing label, or a fresh one
                labels[v] = rng.random_range(0..=block_count);
            }
            let compacted = Partition::from_labels(&labels);
            block_count = compacted.block_count() as u32;
            labels = compacted.block_of().to_vec();
        }
        let candidate = Partition::from_labels(&labels);
        let key = candidate.canonical();
        if seen.contains(&key) {
            continue;
        }
        let report = modularity(g, &candidate)?;
        let (num, _) = report.exact();
        let keep = if epsilon == 0.0 { num >= reference_num } else { (num - reference_num) as f64 >= -slack };
        if keep {
            seen.insert(key);
            found.push((candidate, report.q));
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_returns_nothing() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let out = degenerate_partitions(&g, &Partition::single_block(3), 0.5, 0, 1).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn deterministic_for_a_seed() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        let reference = Partition::new(vec![0, 0, 0, 1, 1, 1]).unwrap();
        let a = degenerate_partitions(&g, &reference, 0.2, 10, 42).unwrap();
        let b = degenerate_partitions(&g, &reference, 0.2, 10, 42).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        for (p, q) in &a {
            assert_ne!(p.canonical(), reference.canonical());
            assert_eq!(modularity(&g, p).unwrap().q, *q);
        }
    }

    #[test]
    fn negative_epsilon_rejected() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert!(degenerate_partitions(&g, &Partition::single_block(2), -0.1, 3, 0).is_err());
    }
}
