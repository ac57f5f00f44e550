//! Community detection on unweighted networks by affinity propagation over
//! latent-geometry dissimilarity kernels.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`], [`stats`], [`perturb`]: simple undirected graphs, edge-list
//!   ingestion, largest-component extraction, descriptive statistics and
//!   random link removal/addition.
//! - [`dissimilarity`]: the six node-dissimilarity kernels (SP, ESP, CN, J,
//!   RA, EBC) and the shortest-path completion they share.
//! - [`ap`]: affinity propagation with a binary search on the shared
//!   preference.
//! - [`louvain`]: the Louvain modularity baseline.
//! - [`evaluation`]: NMI/AMI partition scores and greedy-routing navigability.
//! - [`npso`]: the nonuniform popularity-similarity network generator.

pub mod ap;
pub mod dissimilarity;
mod error;
pub mod evaluation;
pub mod graph;
pub mod louvain;
pub mod npso;
mod partition;
pub mod perturb;
mod seed;
pub mod stats;

pub use ap::{ap_run, preference_search, ApResult, ApSettings};
pub use dissimilarity::{DissimilarityMatrix, EdgeWeights, Kernel};
pub use error::{Error, Result};
pub use graph::{largest_connected_component, load_edge_list, Graph};
pub use partition::Partition;
pub use seed::RngSeed;
pub use stats::{graph_stats, GraphStats};
