use rand::Rng as _;
use rayon::prelude::*;
use spectral_sens_core::bounds::improved_cheeger_bound;
use spectral_sens_core::clustering::{nsc2_cut, usc2_cut};
use spectral_sens_core::generate::gen_erdos_renyi;
use spectral_sens_core::metrics::distance;
use spectral_sens_core::oracle::{
    brute_kway_expansion, brute_min_conductance, brute_min_cut_ratio, brute_partition_distance,
    brute_reliability, MAX_KWAY_VERTICES, MAX_RELIABILITY_EDGES,
};
use spectral_sens_core::rng::{mix_seed, stream_rng};
use spectral_sens_core::spectra::eigenvalues;
use spectral_sens_core::{
    reliability, DistanceKind, Graph, LaplacianKind, Partition, Result as CoreResult,
};

use super::RunConfig;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheckConfig {
    pub graphs: usize,
    /// Vertex counts are drawn from `3..=max_n`.
    pub max_n: usize,
    /// Monte Carlo trials for the reliability comparison.
    pub reliability_trials: usize,
    /// Adds `2n` to every `λ₂` fed to the checks, which must make the
    /// cut-ratio lower bound fail.
    pub inject_fault: bool,
}

impl Default for OracleCheckConfig {
    fn default() -> Self {
        OracleCheckConfig {
            graphs: 200,
            max_n: 14,
            reliability_trials: 10_000,
            inject_fault: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub violations: usize,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub checks: Vec<CheckOutcome>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One `name cases violations PASS|FAIL` line per check.
    pub fn render(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                format!(
                    "{:<24} cases={:<5} violations={:<5} {status}\n",
                    c.name, c.cases, c.violations
                )
            })
            .collect()
    }
}

pub const CHECKS: [&str; 9] = [
    "cut-ratio-lower",
    "conductance-lower",
    "cut-ratio-upper",
    "conductance-upper",
    "sweep-above-optimum",
    "improved-cheeger",
    "higher-order-cheeger",
    "partition-distance",
    "reliability",
];

/// Slack for comparisons against a computed eigenvalue.
fn eig_slack(g: &Graph) -> f64 {
    1e-10 * g.n() as f64 * g.max_degree().max(1) as f64
}

/// Connected random graph number `index`; the edge density is drawn from
/// `[0.2, 0.8]`.
pub fn random_graph(seed: u64, index: u64, max_n: usize) -> Graph {
    let mut rng = stream_rng(seed, index);
    let n = rng.gen_range(3..=max_n.max(3));
    let density = rng.gen_range(0.2..=0.8);
    (0..)
        .map(|attempt| gen_erdos_renyi(n, density, mix_seed(rng.gen(), attempt)).unwrap())
        .find(Graph::is_connected)
        .unwrap()
}

/// `[cases, violations]` per check for one graph.
fn check_graph(
    g: &Graph,
    seed: u64,
    cfg: &OracleCheckConfig,
) -> CoreResult<[[usize; 2]; CHECKS.len()]> {
    let mut out = [[0usize; 2]; CHECKS.len()];
    let mut record = |i: usize, ok: bool| {
        out[i][0] += 1;
        out[i][1] += usize::from(!ok);
    };
    let n = g.n();
    let slack = eig_slack(g);
    let fault = if cfg.inject_fault {
        2.0 * n as f64
    } else {
        0.0
    };
    let lambda = eigenvalues(g, LaplacianKind::Unnormalized)?;
    let nu = eigenvalues(g, LaplacianKind::NormalizedRandomWalk)?;
    let lambda2 = lambda[1] + fault;
    let delta = g.max_degree() as f64;

    let (_, alpha) = brute_min_cut_ratio(g)?;
    let (_, phi) = brute_min_conductance(g)?;
    record(0, lambda2 / 2.0 <= alpha + slack);
    record(1, nu[1] / 2.0 <= phi + slack);
    let usc = usc2_cut(g)?.value;
    let nsc = nsc2_cut(g)?.value;
    record(2, usc <= (2.0 * delta * lambda2.max(0.0)).sqrt() + slack);
    record(3, nsc <= (2.0 * nu[1].max(0.0)).sqrt() + slack);
    record(4, usc >= alpha && nsc >= phi);
    for k in 2..=n {
        if lambda[k - 1] > 1e-8 {
            let bound = improved_cheeger_bound(k, lambda2, lambda[k - 1], g.max_degree()).unwrap();
            record(5, usc <= bound + slack);
        }
    }
    if n <= MAX_KWAY_VERTICES {
        for k in 2..=3 {
            record(6, nu[k - 1] / 2.0 <= brute_kway_expansion(g, k)?.1 + slack);
        }
    }

    let mut rng = stream_rng(seed, 1);
    let k = rng.gen_range(1..=6);
    let mut random_partition = || {
        let labels = (0..n).map(|_| rng.gen_range(0..k)).collect();
        Partition::with_empty_parts(k, labels)
    };
    let (p, q) = (random_partition()?, random_partition()?);
    for kind in [DistanceKind::Size, DistanceKind::Volume] {
        record(
            7,
            distance(g, &p, &q, kind)?.value == brute_partition_distance(g, &p, &q, kind)?,
        );
    }

    if g.m() <= MAX_RELIABILITY_EDGES {
        let prob = 0.05 + 0.3 * rng.gen::<f64>();
        let exact = brute_reliability(g, prob)?;
        let est = reliability(g, prob, cfg.reliability_trials, seed)?.estimate;
        let sigma = (exact * (1.0 - exact) / cfg.reliability_trials as f64).sqrt();
        record(8, (est - exact).abs() <= 3.0 * sigma + 1e-12);
    }
    Ok(out)
}

/// Runs every exhaustive-oracle invariant on random small connected graphs.
/// Writes `oracle_check.csv` (`check,cases,violations,status`).
pub fn oracle_check(run: &RunConfig, cfg: &OracleCheckConfig) -> Result<OracleReport> {
    if cfg.max_n > 14 {
        return Err(CliError::Usage(format!(
            "oracle-check needs --max-n <= 14, got {}",
            cfg.max_n
        )));
    }
    let per_graph = (0..cfg.graphs as u64)
        .into_par_iter()
        .map(|i| {
            check_graph(
                &random_graph(run.seed, i, cfg.max_n),
                mix_seed(run.seed, i),
                cfg,
            )
        })
        .collect::<CoreResult<Vec<_>>>()?;
    let checks = CHECKS
        .iter()
        .enumerate()
        .map(|(i, &name)| CheckOutcome {
            name,
            cases: per_graph.iter().map(|c| c[i][0]).sum(),
            violations: per_graph.iter().map(|c| c[i][1]).sum(),
        })
        .collect();
    let report = OracleReport { checks };
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            let status = if c.passed() { "pass" } else { "fail" };
            vec![
                c.name.into(),
                c.cases.to_string(),
                c.violations.to_string(),
                status.into(),
            ]
        })
        .collect();
    run.output.csv(
        "oracle_check.csv",
        &["check", "cases", "violations", "status"],
        &rows,
    )?;
    Ok(report)
}
