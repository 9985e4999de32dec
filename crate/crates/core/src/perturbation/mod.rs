//! Random edge deletion and its effect on clusterings and spectra.
//!
//! A deletion set `F` keeps each edge independently with probability `p`.
//! Trial `t` under master seed `s` draws from the stream `mix_seed(s, t)`,
//! visiting edges in canonical order with one uniform draw each; `F` is the
//! set of edges whose draw is below `p`. Samples with the same seed and trial
//! index are therefore nested in `p`.

mod matrices;
mod reliability;
mod sensitivity;
mod spectral;

pub use matrices::{deletion_components, DeletionComponent, PerturbationMatrices};
pub use reliability::{reliability, ReliabilityEstimate};
pub use sensitivity::{
    average_sensitivity, SensitivityConfig, SensitivityEstimate, TrialOutcome, TrialRecord,
};
pub use spectral::{
    chernoff_norm_trials, eigen_stability_trials, normalized_norm_trials, ChernoffReport,
    EigenStabilityConfig, EigenStabilityReport, NormalizedNormReport, StabilityMode,
};

use rand::Rng as _;

use crate::clustering::{nsc2, nsc_kmeans, usc2, KMeansConfig};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::partition::Partition;
use crate::rng::stream_rng;

/// One draw of `F ~_p E`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeSample {
    /// Canonical edges, sorted.
    pub removed: Vec<Edge>,
    pub p: f64,
    pub seed: u64,
    pub trial_index: u64,
}

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::validation(format!("p = {p} is not a probability")))
    }
}

/// Deletion flags indexed like [`Graph::edges`].
pub(crate) fn deletion_mask(g: &Graph, p: f64, seed: u64, trial_index: u64) -> Vec<bool> {
    let mut rng = stream_rng(seed, trial_index);
    (0..g.m()).map(|_| rng.gen::<f64>() < p).collect()
}

pub fn sample_edges(g: &Graph, p: f64, seed: u64, trial_index: u64) -> Result<EdgeSample> {
    check_probability(p)?;
    let mask = deletion_mask(g, p, seed, trial_index);
    let removed = g
        .edges()
        .iter()
        .zip(&mask)
        .filter(|(_, &d)| d)
        .map(|(&e, _)| e)
        .collect();
    Ok(EdgeSample {
        removed,
        p,
        seed,
        trial_index,
    })
}

/// The clustering algorithm whose stability is measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    Usc2,
    Nsc2,
    NscKMeans { k: usize, config: KMeansConfig },
}

impl Algorithm {
    pub fn run(&self, g: &Graph) -> Result<Partition> {
        match self {
            Algorithm::Usc2 => usc2(g),
            Algorithm::Nsc2 => nsc2(g),
            Algorithm::NscKMeans { k, config } => nsc_kmeans(g, *k, config),
        }
    }

    /// Short identifier for reports: `usc2`, `nsc2`, `nsc-kmeans-<k>`.
    pub fn name(&self) -> String {
        match self {
            Algorithm::Usc2 => "usc2".into(),
            Algorithm::Nsc2 => "nsc2".into(),
            Algorithm::NscKMeans { k, .. } => format!("nsc-kmeans-{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_erdos_renyi;

    #[test]
    fn extremes() {
        let g = gen_erdos_renyi(30, 0.3, 1).unwrap();
        for t in 0..5 {
            assert!(sample_edges(&g, 0.0, 9, t).unwrap().removed.is_empty());
            assert_eq!(sample_edges(&g, 1.0, 9, t).unwrap().removed, g.edges());
        }
        assert!(sample_edges(&g, -0.1, 9, 0).is_err());
        assert!(sample_edges(&g, f64::NAN, 9, 0).is_err());
    }

    #[test]
    fn binomial_concentration() {
        let g = gen_erdos_renyi(60, 0.6, 2).unwrap();
        let sub: Vec<Edge> = g.edges()[..1000].to_vec();
        let g = Graph::new(60, sub).unwrap();
        let bound = 3.0 * 250f64.sqrt();
        let within = (0..200)
            .filter(|&t| {
                let f = sample_edges(&g, 0.5, 4, t).unwrap().removed.len() as f64;
                (f - 500.0).abs() <= bound
            })
            .count();
        assert!(within >= 198, "{within}");
    }

    #[test]
    fn samples_are_nested_in_p() {
        let g = gen_erdos_renyi(40, 0.5, 3).unwrap();
        for t in 0..20 {
            let small = sample_edges(&g, 0.05, 11, t).unwrap().removed;
            let large = sample_edges(&g, 0.2, 11, t).unwrap().removed;
            assert!(small.iter().all(|e| large.binary_search(e).is_ok()));
        }
    }
}
