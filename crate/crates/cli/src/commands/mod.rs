//! One function per subcommand. Each loads nothing itself: it takes a
//! [`Dataset`], writes its files through [`Output`] and returns what it wrote
//! so callers can inspect the numbers without re-reading CSV.

mod basic;
mod experiments;
mod oracle_check;

pub use basic::{bounds, cluster, generate, reliability, sensitivity, stats, BoundsSummary};
pub use experiments::{
    psweep, reliability_quantiles, scatter, PsweepGraph, PsweepReport, QuantileRow, ScatterReport,
    ScatterRow, Selection,
};
pub use oracle_check::{
    oracle_check, random_graph, CheckOutcome, OracleCheckConfig, OracleReport, CHECKS,
};

use spectral_sens_core::bounds::{bounds_report, ratio_or_infinity};
use spectral_sens_core::{Algorithm, Graph, KMeansConfig};

use crate::dataset::LoadError;
use crate::error::Result;
use crate::output::Output;

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    /// Edge deletion probability.
    pub p: f64,
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum AlgoChoice {
    Usc2,
    Nsc2,
    NscKmeans,
}

impl AlgoChoice {
    /// k-means uses `seed` for its restarts; the sweep algorithms ignore it.
    pub fn algorithm(self, k: usize, seed: u64) -> Algorithm {
        match self {
            AlgoChoice::Usc2 => Algorithm::Usc2,
            AlgoChoice::Nsc2 => Algorithm::Nsc2,
            AlgoChoice::NscKmeans => Algorithm::NscKMeans {
                k,
                config: KMeansConfig::with_seed(seed),
            },
        }
    }
}

/// The spectral quantity the sensitivity of `algo` is plotted against:
/// `λ₂/λ₃²` for `usc2`, `ν₂/ν₃²` for 2-way normalized clustering and
/// `√ν_k/ν_{k+1}` for k-way clustering with `k ≥ 3`.
pub fn predictor(g: &Graph, algo: &Algorithm) -> Result<f64> {
    let k = match algo {
        Algorithm::NscKMeans { k, .. } => *k,
        _ => 2,
    };
    let b = bounds_report(g, k, 1.0)?;
    Ok(match algo {
        Algorithm::Usc2 => ratio_or_infinity(b.spectrum.lambda2, b.spectrum.lambda3.powi(2)),
        _ if k == 2 => b.nsc2_ratio,
        _ => b.kmeans_ratio,
    })
}

pub fn predictor_label(algo: &Algorithm) -> &'static str {
    match algo {
        Algorithm::Usc2 => "lambda2/lambda3^2",
        Algorithm::NscKMeans { k, .. } if *k > 2 => "sqrt(nu_k)/nu_(k+1)",
        _ => "nu2/nu3^2",
    }
}

/// Mean distinguishable from zero at two standard errors.
pub fn is_positive(mean: f64, stderr: f64) -> bool {
    mean > 2.0 * stderr
}

fn write_errors(out: &Output, name: &str, errors: &[LoadError]) -> Result<()> {
    if errors.is_empty() {
        return Ok(());
    }
    let rows: Vec<Vec<String>> = errors
        .iter()
        .map(|e| vec![e.name.clone(), e.message.clone()])
        .collect();
    out.csv(name, &["name", "error"], &rows)
}
