//! Exit criteria. Prints one `ACCEPTANCE <criterion>: PASS|FAIL` line per
//! criterion with the measured values and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng as _;
use spectral_sens_cli::commands::{self, OracleCheckConfig, Selection};
use spectral_sens_cli::dataset::{self, DatasetSpec, SbmGrid};
use spectral_sens_cli::stats::median;
use spectral_sens_cli::{AlgoChoice, Format, Output, RunConfig};
use spectral_sens_core::bounds::assumption_report;
use spectral_sens_core::generate::{gen_complete, gen_erdos_renyi, gen_sbm};
use spectral_sens_core::metrics::distance;
use spectral_sens_core::oracle::{brute_partition_distance, brute_reliability};
use spectral_sens_core::perturbation::{
    chernoff_norm_trials, eigen_stability_trials, EigenStabilityConfig, StabilityMode,
};
use spectral_sens_core::rng::{mix_seed, stream_rng};
use spectral_sens_core::{reliability, DistanceKind, Graph, LaplacianKind, Partition};

const SEED: u64 = 0;
const QUICK_TRIALS: usize = 200;

/// Whether the criterion holds, and the measured values behind it.
type Verdict = (bool, String);

fn run_config(dir: &Path, trials: usize) -> RunConfig {
    RunConfig {
        seed: SEED,
        trials,
        p: 1e-3,
        output: Output::new(dir, Format::Both),
    }
}

fn oracle_equivalence() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    let r = commands::oracle_check(&run_config(dir.path(), 1000), &OracleCheckConfig::default())
        .unwrap();
    let elapsed = start.elapsed();
    let names = [
        "cut-ratio-lower",
        "conductance-lower",
        "cut-ratio-upper",
        "conductance-upper",
    ];
    let checks: Vec<_> = names.iter().map(|n| r.check(n).unwrap()).collect();
    let pass = checks.iter().all(|c| c.cases == 200 && c.violations == 0)
        && elapsed < Duration::from_secs(60);
    let summary: Vec<String> = checks
        .iter()
        .map(|c| format!("{} {}/{}", c.name, c.violations, c.cases))
        .collect();
    (
        pass,
        format!("violations {}; {elapsed:.1?}", summary.join(", ")),
    )
}

fn improved_cheeger() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let r = commands::oracle_check(&run_config(dir.path(), 1000), &OracleCheckConfig::default())
        .unwrap();
    let c = r.check("improved-cheeger").unwrap();
    (
        c.cases > 0 && c.violations == 0,
        format!(
            "{} violations over {} (graph, k) pairs on 200 graphs",
            c.violations, c.cases
        ),
    )
}

fn random_partition(rng: &mut impl rand::Rng, n: usize, k: usize) -> Partition {
    Partition::with_empty_parts(k, (0..n).map(|_| rng.gen_range(0..k)).collect()).unwrap()
}

fn partition_distance_correctness() -> Verdict {
    let mut rng = stream_rng(SEED, 3);
    let mut mismatches = 0;
    for i in 0..500u64 {
        let n = rng.gen_range(1..=14);
        let g = gen_erdos_renyi(n, rng.gen_range(0.1..0.9), mix_seed(SEED, i)).unwrap();
        let k = rng.gen_range(1..=6);
        let (p, q) = (
            random_partition(&mut rng, n, k),
            random_partition(&mut rng, n, k),
        );
        for kind in [DistanceKind::Size, DistanceKind::Volume] {
            let fast = distance(&g, &p, &q, kind).unwrap().value;
            mismatches += usize::from(fast != brute_partition_distance(&g, &p, &q, kind).unwrap());
        }
    }
    (
        mismatches == 0,
        format!("{mismatches} mismatches over 500 pairs, size and volume"),
    )
}

/// Random graph with between 1 and 20 edges.
fn small_edge_graph(rng: &mut impl rand::Rng, seed: u64) -> Graph {
    (0..)
        .map(|attempt| {
            let n = rng.gen_range(3..=8);
            gen_erdos_renyi(n, rng.gen_range(0.3..0.8), mix_seed(seed, attempt)).unwrap()
        })
        .find(|g| (1..=20).contains(&g.m()))
        .unwrap()
}

fn reliability_against_enumeration() -> Verdict {
    const TRIALS: usize = 10_000;
    let within = |est: f64, exact: f64| {
        (est - exact).abs() <= 3.0 * (exact * (1.0 - exact) / TRIALS as f64).sqrt()
    };
    let mut rng = stream_rng(SEED, 4);
    let mut outside = Vec::new();
    for i in 0..50u64 {
        let g = small_edge_graph(&mut rng, mix_seed(SEED, 100 + i));
        let p = rng.gen_range(0.05..0.35);
        let exact = brute_reliability(&g, p).unwrap();
        let est = reliability(&g, p, TRIALS, mix_seed(SEED, i))
            .unwrap()
            .estimate;
        if !within(est, exact) {
            outside.push(i);
        }
    }
    let k3 = reliability(&gen_complete(3).unwrap(), 0.1, TRIALS, SEED)
        .unwrap()
        .estimate;
    (
        outside.is_empty() && within(k3, 0.972),
        format!("graphs outside 3 sigma: {outside:?}; K3 at p=0.1: {k3}"),
    )
}

/// Two-block models on 800 vertices whose third Laplacian eigenvalue clears
/// `max{24pΔ, 48 ln n}`, the first 20 in candidate order.
fn gap_graphs() -> Vec<Graph> {
    let mut out = Vec::new();
    for i in 0..40u64 {
        let q = (1 + i % 10) as f64 / 100.0;
        let g = gen_sbm(2, 400, 0.9, q, mix_seed(SEED, i)).unwrap().graph;
        if assumption_report(&g, 1e-3, 2, None)
            .unwrap()
            .unnormalized
            .gap_holds
        {
            out.push(g);
            if out.len() == 20 {
                break;
            }
        }
    }
    out
}

fn eigenvalue_stability_and_chernoff() -> [Verdict; 2] {
    let start = Instant::now();
    let graphs = gap_graphs();
    let mut worst_fraction: BTreeMap<&str, f64> = BTreeMap::new();
    let mut chernoff_worst: f64 = 1.0;
    for (i, g) in graphs.iter().enumerate() {
        for (label, kind) in [
            ("lambda3", LaplacianKind::Unnormalized),
            ("nu3", LaplacianKind::NormalizedRandomWalk),
        ] {
            let cfg = EigenStabilityConfig {
                p: 1e-3,
                index: 3,
                kind,
                trials: 1000,
                seed: mix_seed(SEED, i as u64),
                mode: StabilityMode::Certified,
            };
            let r = eigen_stability_trials(g, &cfg).unwrap();
            let fraction = if r.skipped == 0 {
                r.satisfied_fraction()
            } else {
                0.0
            };
            let entry = worst_fraction.entry(label).or_insert(1.0);
            *entry = entry.min(fraction);
        }
        let c = chernoff_norm_trials(g, 1e-3, 1000, mix_seed(SEED, i as u64)).unwrap();
        chernoff_worst = chernoff_worst.min(c.satisfied_fraction());
    }
    let elapsed = start.elapsed();
    let enough = graphs.len() == 20;
    let stability = (
        enough && worst_fraction.values().all(|&f| f >= 0.99) && elapsed < Duration::from_secs(600),
        format!(
            "{} graphs; worst satisfied fraction {worst_fraction:?}; {elapsed:.1?}",
            graphs.len()
        ),
    );
    let chernoff = (
        enough && chernoff_worst >= 0.99,
        format!(
            "{} graphs; worst satisfied fraction {chernoff_worst}",
            graphs.len()
        ),
    );
    [stability, chernoff]
}

fn phase_transition() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let data = dataset::load(&DatasetSpec::Sbm(SbmGrid::standard(2, true)), SEED).unwrap();
    let algo = AlgoChoice::NscKmeans.algorithm(2, SEED);
    let r = commands::scatter(&run_config(dir.path(), QUICK_TRIALS), &data, &algo).unwrap();
    let low: Vec<f64> = r
        .rows
        .iter()
        .filter(|row| row.predictor < 0.2)
        .map(|row| row.mean)
        .collect();
    let low_median = median(&low);
    let pass = r.spearman.is_some_and(|s| s >= 0.5) && low_median.is_some_and(|m| m < 0.05);
    (
        pass,
        format!(
            "{} graphs, {} positive, spearman {:?}, median below 0.2: {low_median:?}",
            r.rows.len(),
            r.positive().len(),
            r.spearman
        ),
    )
}

fn linearity_in_p() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let data = dataset::load(&DatasetSpec::Sbm(SbmGrid::standard(2, false)), SEED).unwrap();
    let algo = AlgoChoice::NscKmeans.algorithm(2, SEED);
    let p_list: Vec<f64> = (1..=10).map(|i| i as f64 * 1e-3).collect();
    let selection = Selection {
        max_predictor: Some(0.3),
        limit: Some(10),
    };
    let r = commands::psweep(
        &run_config(dir.path(), QUICK_TRIALS),
        &data,
        &algo,
        &p_list,
        selection,
    )
    .unwrap();
    let r2: Vec<Option<f64>> = r.graphs.iter().map(|g| g.fit.and_then(|f| f.r2)).collect();
    let good = r2.iter().filter(|x| x.is_some_and(|v| v >= 0.9)).count();
    (
        r.graphs.len() == 10 && good >= 8,
        format!(
            "{} graphs, {good} with R^2 >= 0.9; R^2 per graph {r2:?}",
            r.graphs.len()
        ),
    )
}

fn dataset_statistics() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let data = dataset::load(&DatasetSpec::Sbm(SbmGrid::standard(2, false)), SEED).unwrap();
    let s = commands::bounds(&run_config(dir.path(), QUICK_TRIALS), &data, 2).unwrap();
    let close = |x: f64, target: f64| (x - target).abs() <= 0.15 * target;
    (
        s.n_mean == 100.0
            && close(s.m_mean, 1532.04)
            && close(s.nu2_mean, 0.183)
            && close(s.nu3_mean, 0.713),
        format!(
            "{} graphs: n {} m {:.2} nu2 {:.4} nu3 {:.4}",
            s.graphs, s.n_mean, s.m_mean, s.nu2_mean, s.nu3_mean
        ),
    )
}

fn read_tree(root: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(root).unwrap().display().to_string();
                out.insert(rel, fs::read(&path).unwrap());
            }
        }
    }
    out
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_spectral-sens");
    let scratch = tempfile::tempdir().unwrap();
    let graphs = scratch.path().join("graphs");
    let small = [
        "--within",
        "0.5,0.9",
        "--cross",
        "0.05",
        "--block-size",
        "20",
    ];
    let commands: Vec<Vec<&str>> = vec![
        [&["generate"][..], &small].concat(),
        [&["stats"][..], &small].concat(),
        [&["cluster"][..], &small].concat(),
        [
            &["sensitivity", "--p", "0.01", "--trials", "50"][..],
            &small,
        ]
        .concat(),
        [
            &["reliability", "--p", "0.05", "--trials", "200"][..],
            &small,
        ]
        .concat(),
        [&["bounds", "--trials", "100"][..], &small].concat(),
        [&["scatter", "--trials", "50"][..], &small].concat(),
        [
            &["psweep", "--trials", "30", "--p-list", "0.005,0.01"][..],
            &small,
        ]
        .concat(),
        [
            &[
                "reliability-quantiles",
                "--trials",
                "100",
                "--p-list",
                "0,0.1",
            ][..],
            &small,
        ]
        .concat(),
        vec!["oracle-check", "--graphs", "20"],
    ];
    let mut differing = Vec::new();
    let mut failed = Vec::new();
    let mut files = 0;
    for (i, args) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = scratch.path().join(format!("c{i}-r{run}"));
            let status = Command::new(bin)
                .args(args)
                .args(["--seed", "7", "--out-dir"])
                .arg(&out)
                .output()
                .unwrap()
                .status;
            if !status.success() {
                failed.push(args[0]);
            }
            outputs.push(read_tree(&out));
        }
        files += outputs[0].keys().filter(|k| k.ends_with(".csv")).count();
        if outputs[0].is_empty() || outputs[0] != outputs[1] {
            differing.push(args[0]);
        }
    }
    // an edge-list directory written by `generate` reads back identically
    let status = Command::new(bin)
        .args(["generate", "--seed", "7", "--out-dir"])
        .arg(&graphs)
        .args(small)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let reread = scratch.path().join("reread");
    let status = Command::new(bin)
        .args(["stats", "--seed", "7", "--edge-list-dir"])
        .arg(&graphs)
        .arg("--out-dir")
        .arg(&reread)
        .output()
        .unwrap()
        .status;
    let same_stats = status.success()
        && fs::read(reread.join("stats.csv")).unwrap()
            == fs::read(scratch.path().join("c1-r0/stats.csv")).unwrap();
    (differing.is_empty() && failed.is_empty() && same_stats,
        format!(
            "{} commands, {files} CSV files; differing {differing:?}; failed {failed:?}; edge-list round trip {same_stats}",
            commands.len()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut verdicts: Vec<(&str, Verdict)> = vec![
        ("oracle equivalence", oracle_equivalence()),
        ("improved Cheeger", improved_cheeger()),
        ("partition distance", partition_distance_correctness()),
        ("reliability", reliability_against_enumeration()),
    ];
    let [stability, chernoff] = eigenvalue_stability_and_chernoff();
    verdicts.push(("eigenvalue stability", stability));
    verdicts.push(("Chernoff bound", chernoff));
    verdicts.push(("phase transition", phase_transition()));
    verdicts.push(("linearity in p", linearity_in_p()));
    verdicts.push(("dataset statistics", dataset_statistics()));
    verdicts.push(("determinism", determinism()));
    let mut failed = 0;
    for (criterion, (pass, details)) in &verdicts {
        let status = if *pass { "PASS" } else { "FAIL" };
        println!("ACCEPTANCE {criterion}: {status} ({details})");
        failed += usize::from(!pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1?}",
        verdicts.len() - failed,
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
