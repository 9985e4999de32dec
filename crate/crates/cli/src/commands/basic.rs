use rayon::prelude::*;
use spectral_sens_core::bounds::{
    assumption_report, bounds_report, AssumptionReport, BoundsReport,
};
use spectral_sens_core::edgelist::to_edge_list;
use spectral_sens_core::perturbation::{SensitivityEstimate, TrialOutcome};
use spectral_sens_core::{
    average_sensitivity, reliability as estimate_reliability, Algorithm, DistanceKind, Partition,
    SensitivityConfig,
};

use super::{write_errors, RunConfig};
use crate::dataset::{Dataset, LoadError, NamedGraph};
use crate::error::Result;
use crate::output::{num, opt};
use crate::stats::mean;

/// Writes `<name>.edges`, `<name>.labels` for graphs with a planted
/// partition, and `manifest.csv` (`name,n,m`).
pub fn generate(cfg: &RunConfig, data: &Dataset) -> Result<()> {
    let mut rows = Vec::new();
    for ng in &data.graphs {
        cfg.output
            .text(&format!("{}.edges", ng.name), &to_edge_list(&ng.graph))?;
        if let Some(planted) = &ng.planted {
            cfg.output
                .text(&format!("{}.labels", ng.name), &planted.to_text())?;
        }
        rows.push(vec![
            ng.name.clone(),
            ng.graph.n().to_string(),
            ng.graph.m().to_string(),
        ]);
    }
    cfg.output.csv("manifest.csv", &["name", "n", "m"], &rows)
}

/// `stats.csv`: `name,n,m,max_degree,min_degree,volume,gamma,components`.
pub fn stats(cfg: &RunConfig, data: &Dataset) -> Result<()> {
    let rows: Vec<Vec<String>> = data
        .graphs
        .iter()
        .map(|ng| {
            let g = &ng.graph;
            let s = g.stats();
            vec![
                ng.name.clone(),
                g.n().to_string(),
                g.m().to_string(),
                s.max_degree.to_string(),
                s.min_degree.to_string(),
                s.volume.to_string(),
                opt(s.gamma),
                g.connected_components().k().to_string(),
            ]
        })
        .collect();
    let header = [
        "name",
        "n",
        "m",
        "max_degree",
        "min_degree",
        "volume",
        "gamma",
        "components",
    ];
    cfg.output.csv("stats.csv", &header, &rows)?;
    write_errors(&cfg.output, "errors.csv", &data.errors)
}

/// Writes `<name>.partition` for every graph.
pub fn cluster(
    cfg: &RunConfig,
    data: &Dataset,
    algo: &Algorithm,
) -> Result<Vec<(String, Partition)>> {
    let mut out = Vec::new();
    for ng in &data.graphs {
        let partition = algo.run(&ng.graph)?;
        cfg.output
            .text(&format!("{}.partition", ng.name), &partition.to_text())?;
        out.push((ng.name.clone(), partition));
    }
    Ok(out)
}

/// `sensitivity.csv` (`graph,algo,p,trials,mean,stderr,normalized`) and one
/// trial log per graph under `trials/` (`trial,|F|,distance,skipped,reason`;
/// distances are raw). Graphs on which every trial fails go to
/// `errors.csv`.
pub fn sensitivity(
    cfg: &RunConfig,
    data: &Dataset,
    algo: &Algorithm,
    kind: DistanceKind,
    normalize: bool,
) -> Result<Vec<(String, SensitivityEstimate)>> {
    let settings = SensitivityConfig {
        kind,
        normalize,
        ..SensitivityConfig::new(cfg.p, cfg.trials, cfg.seed)
    };
    let mut errors = data.errors.clone();
    let mut results = Vec::new();
    let mut rows = Vec::new();
    for ng in &data.graphs {
        let est = match average_sensitivity(&ng.graph, algo, &settings) {
            Ok(est) => est,
            Err(e) => {
                errors.push(LoadError {
                    name: ng.name.clone(),
                    message: e.to_string(),
                });
                continue;
            }
        };
        rows.push(vec![
            ng.name.clone(),
            algo.name(),
            num(cfg.p),
            est.trials.to_string(),
            num(est.mean),
            num(est.stderr),
            est.normalized.to_string(),
        ]);
        let log: Vec<Vec<String>> = est
            .per_trial
            .iter()
            .map(|r| {
                let (distance, skipped, reason) = match &r.outcome {
                    TrialOutcome::Distance(d) => (d.to_string(), "0", String::new()),
                    TrialOutcome::Skipped(why) => (String::new(), "1", why.clone()),
                };
                vec![
                    r.trial.to_string(),
                    r.removed.to_string(),
                    distance,
                    skipped.into(),
                    reason,
                ]
            })
            .collect();
        cfg.output.csv(
            &format!("trials/{}.csv", ng.name),
            &["trial", "|F|", "distance", "skipped", "reason"],
            &log,
        )?;
        results.push((ng.name.clone(), est));
    }
    let header = [
        "graph",
        "algo",
        "p",
        "trials",
        "mean",
        "stderr",
        "normalized",
    ];
    cfg.output.csv("sensitivity.csv", &header, &rows)?;
    write_errors(&cfg.output, "errors.csv", &errors)?;
    Ok(results)
}

/// `reliability.csv`: `graph,p,trials,estimate,stderr`.
pub fn reliability(cfg: &RunConfig, data: &Dataset) -> Result<Vec<(String, f64, f64)>> {
    let estimates = data
        .graphs
        .par_iter()
        .map(|ng| estimate_reliability(&ng.graph, cfg.p, cfg.trials, cfg.seed))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for (ng, est) in data.graphs.iter().zip(&estimates) {
        rows.push(vec![
            ng.name.clone(),
            num(cfg.p),
            cfg.trials.to_string(),
            num(est.estimate),
            num(est.stderr),
        ]);
        out.push((ng.name.clone(), est.estimate, est.stderr));
    }
    cfg.output.csv(
        "reliability.csv",
        &["graph", "p", "trials", "estimate", "stderr"],
        &rows,
    )?;
    Ok(out)
}

/// Dataset means of the columns of the dataset summary table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsSummary {
    pub graphs: usize,
    pub n_mean: f64,
    pub m_mean: f64,
    pub nu2_mean: f64,
    pub nu3_mean: f64,
}

const BOUNDS_HEADER: [&str; 33] = [
    "name",
    "n",
    "m",
    "max_degree",
    "min_degree",
    "lambda2",
    "lambda3",
    "lambda_max",
    "nu2",
    "nu3",
    "nu_k",
    "nu_k1",
    "nsc2_ratio",
    "kmeans_ratio",
    "usc2_predictor",
    "nsc2_predictor",
    "kmeans_predictor",
    "cut_ratio_lower",
    "cut_ratio_upper",
    "conductance_lower",
    "conductance_upper",
    "improved_cheeger",
    "improved_cheeger_normalized",
    "higher_order_lower",
    "reliability",
    "unnormalized_gap",
    "unnormalized_reliability",
    "normalized_gap",
    "normalized_p",
    "normalized_reliability",
    "kway_gap",
    "kway_expansion",
    "weak_normalized",
];

fn flag(x: bool) -> String {
    u8::from(x).to_string()
}

fn opt_flag(x: Option<bool>) -> String {
    x.map_or_else(|| "NA".into(), flag)
}

fn bounds_row(
    ng: &NamedGraph,
    b: &BoundsReport,
    a: &AssumptionReport,
    reliability: f64,
) -> Vec<String> {
    let s = &b.spectrum;
    vec![
        ng.name.clone(),
        b.n.to_string(),
        b.m.to_string(),
        b.max_degree.to_string(),
        ng.graph.min_degree().to_string(),
        num(s.lambda2),
        num(s.lambda3),
        num(s.lambda_max),
        num(s.nu2),
        num(s.nu3),
        num(s.nu_k),
        num(s.nu_k_plus_1),
        num(b.nsc2_ratio),
        num(b.kmeans_ratio),
        num(b.usc2_predictor),
        num(b.nsc2_predictor),
        num(b.kmeans_predictor),
        num(b.cut_ratio_cheeger.lower),
        num(b.cut_ratio_cheeger.upper),
        num(b.conductance_cheeger.lower),
        num(b.conductance_cheeger.upper),
        opt(b.improved_cheeger),
        opt(b.improved_cheeger_normalized),
        num(b.higher_order_lower),
        num(reliability),
        flag(a.unnormalized.gap_holds),
        opt_flag(a.unnormalized.reliability.holds),
        flag(a.normalized.gap_holds),
        flag(a.normalized.p_holds),
        opt_flag(a.normalized.reliability.holds),
        flag(a.kway.gap_holds),
        flag(a.kway.expansion_holds),
        flag(a.weak.holds),
    ]
}

/// `bounds.csv` with every bound, predictor and assumption clause per graph
/// (assumption flags use a Monte Carlo reliability estimate), and
/// `bounds_summary.csv` (`graphs,n_mean,m_mean,nu2_mean,nu3_mean`).
pub fn bounds(cfg: &RunConfig, data: &Dataset, k: usize) -> Result<BoundsSummary> {
    let computed: Vec<Result<(BoundsReport, AssumptionReport, f64), String>> = data
        .graphs
        .par_iter()
        .map(|ng| {
            let g = &ng.graph;
            let run = || -> spectral_sens_core::Result<_> {
                let b = bounds_report(g, k, 1.0)?;
                let c = estimate_reliability(g, cfg.p, cfg.trials, cfg.seed)?.estimate;
                let a = assumption_report(g, cfg.p, k, Some(c))?;
                Ok((b, a, c))
            };
            run().map_err(|e| e.to_string())
        })
        .collect();
    let mut rows = Vec::new();
    let mut errors = data.errors.clone();
    let mut kept = Vec::new();
    for (ng, result) in data.graphs.iter().zip(computed) {
        match result {
            Ok((b, a, c)) => {
                rows.push(bounds_row(ng, &b, &a, c));
                kept.push(b);
            }
            Err(message) => errors.push(LoadError {
                name: ng.name.clone(),
                message,
            }),
        }
    }
    let column = |f: &dyn Fn(&BoundsReport) -> f64| mean(&kept.iter().map(f).collect::<Vec<_>>());
    let summary = BoundsSummary {
        graphs: kept.len(),
        n_mean: column(&|b| b.n as f64),
        m_mean: column(&|b| b.m as f64),
        nu2_mean: column(&|b| b.spectrum.nu2),
        nu3_mean: column(&|b| b.spectrum.nu3),
    };
    cfg.output.csv("bounds.csv", &BOUNDS_HEADER, &rows)?;
    cfg.output.csv(
        "bounds_summary.csv",
        &["graphs", "n_mean", "m_mean", "nu2_mean", "nu3_mean"],
        &[vec![
            summary.graphs.to_string(),
            num(summary.n_mean),
            num(summary.m_mean),
            num(summary.nu2_mean),
            num(summary.nu3_mean),
        ]],
    )?;
    write_errors(&cfg.output, "errors.csv", &errors)?;
    Ok(summary)
}
