//! Spectral clustering under random edge deletion.
//!
//! The crate implements unnormalized and normalized spectral 2-way
//! clustering, normalized spectral k-way clustering, partition distances, a
//! Monte Carlo estimator of how much these outputs change when each edge is
//! deleted independently with probability `p`, and the spectral bounds that
//! predict that change. Small instances can be checked against exhaustive
//! oracles.
//!
//! All randomness is derived from explicit 64-bit seeds; every result is
//! reproducible and independent of thread scheduling.

pub mod bounds;
pub mod clustering;
pub mod edgelist;
pub mod error;
pub mod generate;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod partition;
pub mod perturbation;
pub mod rng;
pub mod spectra;

pub use clustering::{nsc2, nsc_kmeans, usc2, KMeansConfig};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphStats, VertexSet};
pub use metrics::{d_size, d_vol, epsilon_close, DistanceKind};
pub use partition::Partition;
pub use perturbation::{average_sensitivity, reliability, Algorithm, SensitivityConfig};
pub use spectra::{eigensystem, DenseSymMatrix, EigenSystem, LaplacianKind};
