//! Motif-preserving spectral partitioning of directed graphs.
//!
//! Classic spectral partitioning works on a first-order random walk, so the
//! objects it protects from cutting are edges. This crate generalizes the
//! whole pipeline to three-node structures: a chosen motif (undirected
//! triangles, directed 3-cycles, feedback patterns) is counted into a sparse
//! symmetric order-3 tensor, the tensor is collapsed to a stochastic matrix
//! through its multilinear PageRank vector, and the second left eigenvector
//! of the collapsed matrix drives a sweep cut scored by higher-order
//! conductance. Five standard spectral orderings run through the same sweep
//! machinery for comparison, and a brute-force oracle module mirrors every
//! production formula for verification on small inputs.

#![forbid(unsafe_code)]

pub mod baselines;
pub mod error;
pub mod graph;
pub mod mlpr;
pub mod oracle;
pub mod orderings;
pub mod partition;
pub mod rng;
pub mod sweep;
pub mod tensor;

pub use error::{Error, Result};
pub use graph::{filter_to_motif_core, strongly_connected_components, DirectedGraph};
pub use mlpr::{solve_mlpr, MlprConfig, MlprResult};
pub use partition::{bisect, cluster, Method, Partition, PartitionConfig};
pub use sweep::{best_cut, score_set, sweep, ScoreKind, SweepProfile};
pub use tensor::{build_tensor, enumerate_triangles, MotifTensor, TensorKind, TransitionTensor};
