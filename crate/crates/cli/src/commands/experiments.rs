use std::cmp::Ordering;

use rayon::prelude::*;
use spectral_sens_core::{average_sensitivity, reliability, Algorithm, SensitivityConfig};

use super::{is_positive, predictor, predictor_label, write_errors, RunConfig};
use crate::dataset::{Dataset, LoadError};
use crate::error::Result;
use crate::output::{num, opt};
use crate::stats::{linear_fit, median, quantile, spearman, LinearFit};
use crate::svg::Chart;

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterRow {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub predictor: f64,
    /// Divided by `vol(G)`.
    pub mean: f64,
    pub stderr: f64,
}

impl ScatterRow {
    pub fn positive(&self) -> bool {
        is_positive(self.mean, self.stderr)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScatterReport {
    pub rows: Vec<ScatterRow>,
    pub errors: Vec<LoadError>,
    /// Sensitivity against predictor over positive rows.
    pub fit: Option<LinearFit>,
    /// Rank correlation over positive rows.
    pub spearman: Option<f64>,
}

impl ScatterReport {
    pub fn positive(&self) -> Vec<&ScatterRow> {
        self.rows.iter().filter(|r| r.positive()).collect()
    }
}

/// `scatter.csv` (`name,n,m,predictor,sensitivity_mean,stderr`),
/// `scatter_fit.csv` (`graphs,positive,slope,intercept,r2,spearman`) and
/// `scatter.svg` with the regression line over positive graphs.
pub fn scatter(cfg: &RunConfig, data: &Dataset, algo: &Algorithm) -> Result<ScatterReport> {
    let settings = SensitivityConfig::new(cfg.p, cfg.trials, cfg.seed);
    let mut rows = Vec::new();
    let mut errors = data.errors.clone();
    for ng in &data.graphs {
        let g = &ng.graph;
        let measured =
            predictor(g, algo).and_then(|x| Ok((x, average_sensitivity(g, algo, &settings)?)));
        match measured {
            Ok((x, est)) => rows.push(ScatterRow {
                name: ng.name.clone(),
                n: g.n(),
                m: g.m(),
                predictor: x,
                mean: est.mean,
                stderr: est.stderr,
            }),
            Err(e) => errors.push(LoadError {
                name: ng.name.clone(),
                message: e.to_string(),
            }),
        }
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = rows
        .iter()
        .filter(|r| r.positive() && r.predictor.is_finite())
        .map(|r| (r.predictor, r.mean))
        .unzip();
    let report = ScatterReport {
        fit: linear_fit(&xs, &ys),
        spearman: spearman(&xs, &ys),
        rows,
        errors,
    };

    let csv_rows: Vec<Vec<String>> = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.name.clone(),
                r.n.to_string(),
                r.m.to_string(),
                num(r.predictor),
                num(r.mean),
                num(r.stderr),
            ]
        })
        .collect();
    let header = ["name", "n", "m", "predictor", "sensitivity_mean", "stderr"];
    cfg.output.csv("scatter.csv", &header, &csv_rows)?;
    let fit = report.fit;
    cfg.output.csv(
        "scatter_fit.csv",
        &["graphs", "positive", "slope", "intercept", "r2", "spearman"],
        &[vec![
            report.rows.len().to_string(),
            xs.len().to_string(),
            opt(fit.map(|f| f.slope)),
            opt(fit.map(|f| f.intercept)),
            opt(fit.and_then(|f| f.r2)),
            opt(report.spearman),
        ]],
    )?;
    let mut chart = Chart::new(
        &format!("{} sensitivity, p = {}", algo.name(), cfg.p),
        predictor_label(algo),
        "average sensitivity / vol(G)",
    )
    .points(
        report.rows.iter().map(|r| (r.predictor, r.mean)).collect(),
        "black",
    );
    if let Some(f) = fit {
        let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        chart = chart.line(
            vec![
                (lo, f.slope * lo + f.intercept),
                (hi, f.slope * hi + f.intercept),
            ],
            "red",
        );
    }
    cfg.output.svg("scatter.svg", &chart)?;
    write_errors(&cfg.output, "errors.csv", &report.errors)?;
    Ok(report)
}

/// Which graphs of a dataset a p-sweep runs on: those with predictor below
/// `max_predictor`, in dataset order, at most `limit` of them.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Selection {
    pub max_predictor: Option<f64>,
    pub limit: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsweepGraph {
    pub name: String,
    pub predictor: f64,
    /// One entry per deletion probability.
    pub means: Vec<f64>,
    pub stderrs: Vec<f64>,
    /// Mean against `p`.
    pub fit: Option<LinearFit>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsweepReport {
    pub p_list: Vec<f64>,
    pub graphs: Vec<PsweepGraph>,
    /// Per `p`: median, 0.4- and 0.6-quantile across graphs.
    pub band: Vec<(f64, f64, f64)>,
    pub errors: Vec<LoadError>,
}

/// `psweep.csv` (`graph,predictor,p,mean,stderr`), `psweep_fit.csv`
/// (`graph,predictor,slope,intercept,r2`), `psweep_band.csv`
/// (`p,median,q40,q60`) and `psweep.svg`. Every `p` reuses the run seed, so
/// the deleted sets are nested across `p`.
pub fn psweep(
    cfg: &RunConfig,
    data: &Dataset,
    algo: &Algorithm,
    p_list: &[f64],
    selection: Selection,
) -> Result<PsweepReport> {
    let mut errors = data.errors.clone();
    let mut graphs = Vec::new();
    for ng in &data.graphs {
        if selection.limit.is_some_and(|l| graphs.len() >= l) {
            break;
        }
        let g = &ng.graph;
        let x = match predictor(g, algo) {
            Ok(x) => x,
            Err(e) => {
                errors.push(LoadError {
                    name: ng.name.clone(),
                    message: e.to_string(),
                });
                continue;
            }
        };
        if selection
            .max_predictor
            .is_some_and(|t| x.partial_cmp(&t) != Some(Ordering::Less))
        {
            continue;
        }
        let mut means = Vec::with_capacity(p_list.len());
        let mut stderrs = Vec::with_capacity(p_list.len());
        let mut failure = None;
        for &p in p_list {
            match average_sensitivity(g, algo, &SensitivityConfig::new(p, cfg.trials, cfg.seed)) {
                Ok(est) => {
                    means.push(est.mean);
                    stderrs.push(est.stderr);
                }
                Err(e) => {
                    failure = Some(e.to_string());
                    break;
                }
            }
        }
        if let Some(message) = failure {
            errors.push(LoadError {
                name: ng.name.clone(),
                message,
            });
            continue;
        }
        graphs.push(PsweepGraph {
            name: ng.name.clone(),
            predictor: x,
            fit: linear_fit(p_list, &means),
            means,
            stderrs,
        });
    }
    let band: Vec<(f64, f64, f64)> = (0..p_list.len())
        .map(|i| {
            let column: Vec<f64> = graphs.iter().map(|g| g.means[i]).collect();
            (
                median(&column).unwrap_or(f64::NAN),
                quantile(&column, 0.4).unwrap_or(f64::NAN),
                quantile(&column, 0.6).unwrap_or(f64::NAN),
            )
        })
        .collect();
    let report = PsweepReport {
        p_list: p_list.to_vec(),
        graphs,
        band,
        errors,
    };

    let mut rows = Vec::new();
    for g in &report.graphs {
        for (i, &p) in p_list.iter().enumerate() {
            rows.push(vec![
                g.name.clone(),
                num(g.predictor),
                num(p),
                num(g.means[i]),
                num(g.stderrs[i]),
            ]);
        }
    }
    cfg.output.csv(
        "psweep.csv",
        &["graph", "predictor", "p", "mean", "stderr"],
        &rows,
    )?;
    let fits: Vec<Vec<String>> = report
        .graphs
        .iter()
        .map(|g| {
            vec![
                g.name.clone(),
                num(g.predictor),
                opt(g.fit.map(|f| f.slope)),
                opt(g.fit.map(|f| f.intercept)),
                opt(g.fit.and_then(|f| f.r2)),
            ]
        })
        .collect();
    cfg.output.csv(
        "psweep_fit.csv",
        &["graph", "predictor", "slope", "intercept", "r2"],
        &fits,
    )?;
    let bands: Vec<Vec<String>> = p_list
        .iter()
        .zip(&report.band)
        .map(|(&p, &(m, lo, hi))| vec![num(p), num(m), num(lo), num(hi)])
        .collect();
    cfg.output
        .csv("psweep_band.csv", &["p", "median", "q40", "q60"], &bands)?;
    let chart = Chart::new(
        &format!("{} sensitivity against p", algo.name()),
        "p",
        "average sensitivity / vol(G)",
    )
    .band(
        p_list.to_vec(),
        report.band.iter().map(|b| b.1).collect(),
        report.band.iter().map(|b| b.2).collect(),
        "steelblue",
    )
    .line(
        p_list
            .iter()
            .zip(&report.band)
            .map(|(&p, b)| (p, b.0))
            .collect(),
        "navy",
    );
    cfg.output.svg("psweep.svg", &chart)?;
    write_errors(&cfg.output, "errors.csv", &report.errors)?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantileRow {
    pub p: f64,
    /// `(q, value)` per requested quantile level.
    pub values: Vec<(f64, f64)>,
}

/// `reliability_by_graph.csv` (`graph,p,trials,estimate,stderr`),
/// `reliability_quantiles.csv` (`p,q,reliability`) and
/// `reliability_quantiles.svg` with one curve per quantile level.
pub fn reliability_quantiles(
    cfg: &RunConfig,
    data: &Dataset,
    p_list: &[f64],
    q_list: &[f64],
) -> Result<Vec<QuantileRow>> {
    let estimates: Vec<Vec<(f64, f64)>> = data
        .graphs
        .par_iter()
        .map(|ng| {
            p_list
                .iter()
                .map(|&p| {
                    reliability(&ng.graph, p, cfg.trials, cfg.seed).map(|r| (r.estimate, r.stderr))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut by_graph = Vec::new();
    for (ng, row) in data.graphs.iter().zip(&estimates) {
        for (&p, &(c, se)) in p_list.iter().zip(row) {
            by_graph.push(vec![
                ng.name.clone(),
                num(p),
                cfg.trials.to_string(),
                num(c),
                num(se),
            ]);
        }
    }
    let out: Vec<QuantileRow> = p_list
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let column: Vec<f64> = estimates.iter().map(|row| row[i].0).collect();
            QuantileRow {
                p,
                values: q_list
                    .iter()
                    .map(|&q| (q, quantile(&column, q).unwrap_or(f64::NAN)))
                    .collect(),
            }
        })
        .collect();
    let rows: Vec<Vec<String>> = out
        .iter()
        .flat_map(|r| {
            r.values
                .iter()
                .map(move |&(q, v)| vec![num(r.p), num(q), num(v)])
        })
        .collect();
    cfg.output.csv(
        "reliability_by_graph.csv",
        &["graph", "p", "trials", "estimate", "stderr"],
        &by_graph,
    )?;
    cfg.output.csv(
        "reliability_quantiles.csv",
        &["p", "q", "reliability"],
        &rows,
    )?;
    const COLORS: [&str; 6] = ["navy", "teal", "green", "orange", "red", "purple"];
    let mut chart = Chart::new("reliability quantiles", "p", "C(p)");
    for j in 0..q_list.len() {
        chart = chart.line(
            out.iter().map(|r| (r.p, r.values[j].1)).collect(),
            COLORS[j % COLORS.len()],
        );
    }
    cfg.output.svg("reliability_quantiles.svg", &chart)?;
    write_errors(&cfg.output, "errors.csv", &data.errors)?;
    Ok(out)
}
