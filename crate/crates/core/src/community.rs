use std::cmp::Ordering;

use crate::graph::{VertexId, VertexSubset};

/// A possibly overlapping collection of vertex subsets in canonical order:
/// larger subsets first, ties broken lexicographically by member list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CommunitySet {
    communities: Vec<VertexSubset>,
}

fn canonical_cmp(a: &VertexSubset, b: &VertexSubset) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.members().cmp(b.members()))
}

impl CommunitySet {
    pub fn new(subsets: impl IntoIterator<Item = VertexSubset>) -> Self {
        let mut communities: Vec<VertexSubset> = subsets.into_iter().collect();
        communities.sort_unstable_by(canonical_cmp);
        communities.dedup();
        CommunitySet { communities }
    }

    /// Builds from raw member lists that are already strictly ascending.
    pub(crate) fn from_sorted_lists(lists: impl IntoIterator<Item = Vec<VertexId>>) -> Self {
        Self::new(lists.into_iter().map(VertexSubset::from_sorted))
    }

    pub fn communities(&self) -> &[VertexSubset] {
        &self.communities
    }

    pub fn len(&self) -> usize {
        self.communities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSubset> {
        self.communities.iter()
    }

    pub fn contains(&self, s: &VertexSubset) -> bool {
        self.communities.binary_search_by(|c| canonical_cmp(c, s)).is_ok()
    }

    /// Number of communities containing each vertex.
    pub fn membership_counts(&self, vertex_count: usize) -> Vec<usize> {
        let mut counts = vec![0; vertex_count];
        for c in &self.communities {
            for &v in c.members() {
                counts[v as usize] += 1;
            }
        }
        counts
    }
}

impl<'a> IntoIterator for &'a CommunitySet {
    type Item = &'a VertexSubset;
    type IntoIter = std::slice::Iter<'a, VertexSubset>;

    fn into_iter(self) -> Self::IntoIter {
        self.communities.iter()
    }
}
