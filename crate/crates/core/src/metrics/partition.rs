use std::collections::{BTreeMap, HashMap};

use crate::community::CommunitySet;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Disjoint, exhaustive assignment of vertices to `block_count` non-empty blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    block_of: Vec<u32>,
    block_count: usize,
}

impl Partition {
    /// Validates that block indices are exactly `0..k` with every block used.
    pub fn new(block_of: Vec<u32>) -> Result<Self> {
        let block_count = block_of.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        let mut used = vec![false; block_count];
        for &b in &block_of {
            used[b as usize] = true;
        }
        if let Some(empty) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidPartition(format!("block {empty} is empty")));
        }
        Ok(Partition { block_of, block_count })
    }

    /// Compacts arbitrary block labels to `0..k`, preserving their numeric order.
    pub fn from_labels<T: Ord + Copy>(labels: &[T]) -> Self {
        let distinct: BTreeMap<T, u32> = labels.iter().map(|&l| (l, 0)).collect();
        let index: BTreeMap<T, u32> = distinct.keys().enumerate().map(|(i, &l)| (l, i as u32)).collect();
        let block_of = labels.iter().map(|l| index[l]).collect();
        Partition { block_of, block_count: index.len() }
    }

    /// Everything in one block.
    pub fn single_block(vertex_count: usize) -> Self {
        Partition { block_of: vec![0; vertex_count], block_count: usize::from(vertex_count > 0) }
    }

    pub fn singletons(vertex_count: usize) -> Self {
        Partition { block_of: (0..vertex_count as u32).collect(), block_count: vertex_count }
    }

    pub fn block_of(&self) -> &[u32] {
        &self.block_of
    }

    pub fn block(&self, v: VertexId) -> u32 {
        self.block_of[v as usize]
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn vertex_count(&self) -> usize {
        self.block_of.len()
    }

    /// Members of each block, ascending.
    pub fn blocks(&self) -> Vec<Vec<VertexId>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (v, &b) in self.block_of.iter().enumerate() {
            blocks[b as usize].push(v as VertexId);
        }
        blocks
    }

    /// Relabels blocks in order of first appearance; equal as set partitions
    /// iff the canonical forms are equal.
    pub fn canonical(&self) -> Partition {
        let mut relabel = vec![u32::MAX; self.block_count];
        let mut next = 0;
        let block_of = self
            .block_of
            .iter()
            .map(|&b| {
                if relabel[b as usize] == u32::MAX {
                    relabel[b as usize] = next;
                    next += 1;
                }
                relabel[b as usize]
            })
            .collect();
        Partition { block_of, block_count: self.block_count }
    }

    pub(crate) fn check_for(&self, g: &Graph) -> Result<()> {
        if self.vertex_count() != g.vertex_count() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices, graph has {}",
                self.vertex_count(),
                g.vertex_count()
            )));
        }
        Ok(())
    }
}

/// How a vertex claimed by several communities picks its block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AssignmentPolicy {
    /// The community holding most of the vertex's neighbours; ties go to the
    /// lower community index.
    #[default]
    MostInternalNeighbors,
    /// The lowest-indexed community containing the vertex.
    FirstCommunity,
}

/// Flattens an overlapping cover into a partition. Communities keep their
/// order as blocks, uncovered vertices become trailing singleton blocks, and
/// blocks emptied by overlap resolution are dropped.
pub fn cover_to_partition(g: &Graph, cover: &CommunitySet, policy: AssignmentPolicy) -> Result<Partition> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::InvalidPartition("cannot partition an empty graph".into()));
    }
    let mut claims: HashMap<VertexId, Vec<usize>> = HashMap::new();
    for (ci, c) in cover.iter().enumerate() {
        if let Some(&last) = c.members().last() {
            g.check_vertex(last as u64)
                .map_err(|_| Error::InvalidSubset(format!("community {ci} has vertex {last} outside graph")))?;
        }
        for &v in c.members() {
            claims.entry(v).or_default().push(ci);
        }
    }

    let communities = cover.communities();
    let mut label = vec![u64::MAX; n];
    for (&v, owners) in &claims {
        let chosen = match policy {
            AssignmentPolicy::FirstCommunity => owners[0],
            AssignmentPolicy::MostInternalNeighbors => {
                let mut best = owners[0];
                let mut best_count = usize::MIN;
                // owners ascend, so strict > keeps the lower index on ties
                for &ci in owners {
                    let c = &communities[ci];
                    let count = g.adj(v).iter().filter(|&&w| c.contains(w)).count();
                    if count > best_count {
                        best = ci;
                        best_count = count;
                    }
                }
                best
            }
        };
        label[v as usize] = chosen as u64;
    }
    let uncovered = label.iter_mut().filter(|l| **l == u64::MAX);
    for (l, singleton) in uncovered.zip(communities.len() as u64..) {
        *l = singleton;
    }
    Ok(Partition::from_labels(&label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSubset;

    fn subset(v: &[u32], n: usize) -> VertexSubset {
        VertexSubset::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Partition::new(vec![0, 2]).is_err());
        let p = Partition::new(vec![1, 0, 1]).unwrap();
        assert_eq!(p.block_count(), 2);
        assert_eq!(p.blocks(), vec![vec![1], vec![0, 2]]);
        assert_eq!(p.canonical().block_of(), &[0, 1, 0]);
        let q = Partition::from_labels(&[7u64, 3, 7, 9]);
        assert_eq!(q.block_of(), &[1, 0, 1, 2]);
    }

    #[test]
    fn disjoint_cover_spanning_graph() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3), (1, 2)]).unwrap();
        let cover = CommunitySet::new([subset(&[0, 1], 4), subset(&[2, 3], 4)]);
        let p = cover_to_partition(&g, &cover, AssignmentPolicy::default()).unwrap();
        assert_eq!(p.blocks(), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn empty_cover_gives_singletons() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let p = cover_to_partition(&g, &CommunitySet::default(), AssignmentPolicy::default()).unwrap();
        assert_eq!(p, Partition::singletons(3));
        let empty = Graph::from_edges(0, []).unwrap();
        assert!(cover_to_partition(&empty, &CommunitySet::default(), AssignmentPolicy::default()).is_err());
    }

    /// Vertex 2 sits in both {0,1,2} and {2,3,4}; it has edges to 0, 1 and 3
    /// only, so counting by hand it has two neighbours in the first community
    /// and one in the second.
    #[test]
    fn overlap_goes_to_community_with_more_neighbours() {
        let g = Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        let cover = CommunitySet::new([subset(&[0, 1, 2], 6), subset(&[2, 3, 4], 6)]);
        let brute: Vec<usize> =
            cover.iter().map(|c| (0..6u32).filter(|&w| c.contains(w) && g.has_edge(2, w)).count()).collect();
        assert_eq!(brute, vec![2, 1]);
        let p = cover_to_partition(&g, &cover, AssignmentPolicy::MostInternalNeighbors).unwrap();
        assert_eq!(p.block(2), p.block(0));
        assert_ne!(p.block(2), p.block(3));
        assert_eq!(p.blocks(), vec![vec![0, 1, 2], vec![3, 4], vec![5]]);

        // vertex 2 has one neighbour in each community: the lower index wins

        let g2 = Graph::from_edges(5, [(0, 2), (2, 3), (0, 1), (3, 4)]).unwrap();
        let cover2 = CommunitySet::new([subset(&[0, 1, 2], 5), subset(&[2, 3, 4], 5)]);
        let p2 = cover_to_partition(&g2, &cover2, AssignmentPolicy::MostInternalNeighbors).unwrap();
        assert_eq!(p2.block(2), p2.block(0));
    }

    #[test]
    fn overlap_resolution_can_empty_a_block() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let cover = CommunitySet::new([subset(&[0, 1, 2], 3), subset(&[1, 2], 3)]);
        let p = cover_to_partition(&g, &cover, AssignmentPolicy::FirstCommunity).unwrap();
        assert_eq!(p, Partition::single_block(3));
    }
}
