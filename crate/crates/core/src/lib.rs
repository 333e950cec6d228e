//! Maximal clique and `(λ, γ)`-quasi-clique enumeration, modularity scoring,
//! synthetic graph generators and text I/O for undirected simple graphs.

pub mod cliques;
pub mod community;
pub mod error;
pub mod fraction;
pub mod generators;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod quasi;

pub use cliques::{brute_force_maximal_cliques, enumerate_maximal_cliques, for_each_maximal_clique, CLIQUE_ORACLE_CAP};
pub use community::CommunitySet;
pub use error::{Error, Result};
pub use fraction::Fraction;
pub use graph::{CoreDecomposition, Graph, SubgraphStats, VertexId, VertexSubset};
pub use metrics::{
    cover_to_partition, degenerate_partitions, is_quasi_clique, modularity, AssignmentPolicy, BlockTerm,
    ModularityReport, Partition, QuasiCliqueParams,
};
pub use quasi::{enumerate_maximal_quasi_cliques, is_locally_maximal};

/// Runs `f` on a dedicated rayon pool of `threads` workers, or on the global
/// pool when `threads` is 0. Enumeration results do not depend on the choice.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start {threads} threads: {e}")))?;
    Ok(pool.install(f))
}
