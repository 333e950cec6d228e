//! Partition quality and the quasi-clique membership predicate.

mod degenerate;
mod modularity;
mod partition;
mod predicate;

pub use degenerate::degenerate_partitions;
pub use modularity::{modularity, BlockTerm, ModularityReport};
pub use partition::{cover_to_partition, AssignmentPolicy, Partition};
pub use predicate::{is_quasi_clique, QuasiCliqueParams};
