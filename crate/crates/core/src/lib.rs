//! Exact checks for tree packings in hypergraphs: weak partition
//! connectivity, tree assignments, ordered k-tree decompositions and their
//! signatures, two-sided star certificates, one-vertex sums, support
//! hypergraphs of index families, and the slack identity.
//!
//! Everything is exhaustive and exact; searches are bounded by [`Limits`].

pub mod assignment;
pub mod certificate;
pub mod cli;
pub mod decomposition;
pub mod error;
pub mod families;
pub mod hypergraph;
pub mod limits;
pub mod partition;
pub mod slack;
pub mod support;
pub mod unionfind;

pub use assignment::{
    crossing_count, flatten, star_assignment, star_centers, validate_assignment, CenterMap, LabelledEdge,
    LabelledMultigraph, TreeAssignment,
};
pub use certificate::{verify_certificate, LayerMap, TwoSidedStarCertificate, VerifyMode};
pub use decomposition::{
    enumerate_decompositions, has_k_distinguishable_assignment, signature, KTreeDecomposition, SignatureVector,
};
pub use error::{Error, Result};
pub use hypergraph::{is_k_critical, is_k_wpc, total_excess, weak_partition_excess, Hyperedge, Hypergraph};
pub use limits::Limits;
pub use partition::{enumerate_partitions, Partition};
pub use support::IndexFamily;
