//! Spectral clustering: sweep cuts over the second Laplacian eigenvector and
//! k-means over the random-walk eigenvector embedding.

mod kmeans;
mod sweep;

pub use kmeans::{kmeans, KMeansConfig, KMeansResult};
pub use sweep::{sweep_alpha, sweep_order, sweep_phi, SweepCut};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::spectra::{eigensystem, LaplacianKind};

/// Minimum cut-ratio sweep over the second eigenvector of `D − A`.
pub fn usc2_cut(g: &Graph) -> Result<SweepCut> {
    check_two_vertices(g)?;
    let es = eigensystem(g, LaplacianKind::Unnormalized)?;
    sweep_alpha(g, es.eigenvector(2))
}

/// Minimum conductance sweep over the second eigenvector of `I − D⁻¹A`.
pub fn nsc2_cut(g: &Graph) -> Result<SweepCut> {
    check_two_vertices(g)?;
    let es = eigensystem(g, LaplacianKind::NormalizedRandomWalk)?;
    sweep_phi(g, es.eigenvector(2))
}

/// Unnormalized spectral 2-way clustering; the sweep prefix is part 0.
pub fn usc2(g: &Graph) -> Result<Partition> {
    Ok(Partition::bipartition(&usc2_cut(g)?.set))
}

/// Normalized spectral 2-way clustering; the sweep prefix is part 0.
pub fn nsc2(g: &Graph) -> Result<Partition> {
    Ok(Partition::bipartition(&nsc2_cut(g)?.set))
}

/// k-means on the rows of the first `k` right eigenvectors of `I − D⁻¹A`,
/// trivial eigenvector included, rows not normalized.
pub fn nsc_kmeans(g: &Graph, k: usize, cfg: &KMeansConfig) -> Result<Partition> {
    if k < 2 || k > g.n() {
        return Err(Error::domain(format!(
            "k-way clustering needs 2 <= k <= n, got k = {k}, n = {}",
            g.n()
        )));
    }
    let es = eigensystem(g, LaplacianKind::NormalizedRandomWalk)?;
    Ok(kmeans(&es.embedding(k), k, cfg)?.partition)
}

fn check_two_vertices(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::domain(format!(
            "2-way clustering needs n >= 2, got {}",
            g.n()
        )));
    }
    Ok(())
}
