//! Trial-based checks of how random deletion moves Laplacian spectra.

use rayon::prelude::*;

use super::{check_probability, deletion_components, deletion_mask, DeletionComponent};
use crate::bounds::normalized_deletion_scale;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::spectra::{
    eigenvalues, laplacian, residual_tolerance, symmetric_eigenvalues, DenseSymMatrix,
    LaplacianKind,
};

/// How each eigenvalue-stability trial is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityMode {
    /// Always recompute `λ_t(G − F)`.
    Exact,
    /// First try the Weyl lower bound `λ_t(G − F) ≥ λ_t(G) − ‖H‖` with a
    /// rigorous upper bound on `‖H‖`; recompute only when it is inconclusive.
    Certified,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenStabilityConfig {
    pub p: f64,
    /// 1-based eigenvalue index, at least 2.
    pub index: usize,
    pub kind: LaplacianKind,
    pub trials: usize,
    pub seed: u64,
    pub mode: StabilityMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenStabilityReport {
    /// `λ_t(G)`.
    pub baseline: f64,
    pub trials: usize,
    pub skipped: usize,
    /// Trials with `λ_t(G − F) ≥ λ_t(G)/2`.
    pub satisfied: usize,
    /// Trials settled by the Weyl certificate without an eigensolve.
    pub certified: usize,
    /// Per trial `λ_t(G − F)/λ_t(G)`, or for certified trials the certified
    /// lower bound on it; `None` for skipped trials.
    pub ratios: Vec<Option<f64>>,
    /// Minimum of `ratios`.
    pub min_ratio: f64,
}

impl EigenStabilityReport {
    pub fn satisfied_fraction(&self) -> f64 {
        self.satisfied as f64 / (self.trials - self.skipped).max(1) as f64
    }
}

enum StabilityTrial {
    Skipped,
    Decided { ratio: f64, certified: bool },
}

/// Frequency of `λ_t(G − F) ≥ λ_t(G)/2` over random deletions. Trials that
/// isolate a vertex under the normalized kind are skipped.
pub fn eigen_stability_trials(
    g: &Graph,
    cfg: &EigenStabilityConfig,
) -> Result<EigenStabilityReport> {
    check_probability(cfg.p)?;
    if cfg.index < 2 || cfg.index > g.n() {
        return Err(Error::validation(format!(
            "eigenvalue index must lie in 2..=n, got {} for n = {}",
            cfg.index,
            g.n()
        )));
    }
    if cfg.trials == 0 {
        return Err(Error::validation(
            "stability check needs at least one trial",
        ));
    }
    let base_matrix = laplacian(g, cfg.kind)?;
    let tol = residual_tolerance(&base_matrix);
    let baseline = symmetric_eigenvalues(&base_matrix)?[cfg.index - 1];
    if baseline <= tol {
        return Err(Error::domain(format!(
            "eigenvalue {} of the graph is zero; the ratio is undefined",
            cfg.index
        )));
    }

    let outcomes: Vec<Result<StabilityTrial>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mask = deletion_mask(g, cfg.p, cfg.seed, trial);
            let removed = removed_edges(g, &mask);
            if removed.is_empty() {
                return Ok(StabilityTrial::Decided {
                    ratio: 1.0,
                    certified: false,
                });
            }
            if cfg.kind == LaplacianKind::NormalizedRandomWalk
                && removed_isolates_vertex(g, &removed)
            {
                return Ok(StabilityTrial::Skipped);
            }
            if cfg.mode == StabilityMode::Certified {
                let norm_bound = match cfg.kind {
                    LaplacianKind::Unnormalized => deletion_laplacian_norm_bound(g.n(), &removed)?,
                    LaplacianKind::NormalizedRandomWalk => normalized_shift_row_bound(g, &removed),
                };
                let lower = baseline - tol - norm_bound;
                if lower >= baseline / 2.0 {
                    return Ok(StabilityTrial::Decided {
                        ratio: lower / baseline,
                        certified: true,
                    });
                }
            }
            let perturbed = g.without_marked(&mask);
            let value = eigenvalues(&perturbed, cfg.kind)?[cfg.index - 1];
            Ok(StabilityTrial::Decided {
                ratio: value / baseline,
                certified: false,
            })
        })
        .collect();

    let mut ratios = Vec::with_capacity(cfg.trials);
    let (mut skipped, mut satisfied, mut certified) = (0, 0, 0);
    for outcome in outcomes {
        match outcome? {
            StabilityTrial::Skipped => {
                skipped += 1;
                ratios.push(None);
            }
            StabilityTrial::Decided {
                ratio,
                certified: c,
            } => {
                satisfied += usize::from(ratio >= 0.5);
                certified += usize::from(c);
                ratios.push(Some(ratio));
            }
        }
    }
    let min_ratio = ratios
        .iter()
        .flatten()
        .copied()
        .fold(f64::INFINITY, f64::min);
    Ok(EigenStabilityReport {
        baseline,
        trials: cfg.trials,
        skipped,
        satisfied,
        certified,
        ratios,
        min_ratio,
    })
}

fn removed_edges(g: &Graph, mask: &[bool]) -> Vec<Edge> {
    g.edges()
        .iter()
        .zip(mask)
        .filter(|(_, &d)| d)
        .map(|(&e, _)| e)
        .collect()
}

fn deleted_degrees(n: usize, removed: &[Edge]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(u, v) in removed {
        d[u] += 1;
        d[v] += 1;
    }
    d
}

fn removed_isolates_vertex(g: &Graph, removed: &[Edge]) -> bool {
    let lost = deleted_degrees(g.n(), removed);
    (0..g.n()).any(|v| lost[v] > 0 && lost[v] == g.degree(v))
}

/// Upper bound on `λ_max(E_F)`: the largest eigenvalue over the components
/// of `(V, F)` plus each block's residual tolerance.
fn deletion_laplacian_norm_bound(n: usize, removed: &[Edge]) -> Result<f64> {
    let mut bound: f64 = 0.0;
    for c in deletion_components(n, removed)? {
        let block = c.laplacian();
        let top = *symmetric_eigenvalues(&block)?
            .last()
            .expect("nonempty block");
        bound = bound.max(top + residual_tolerance(&block));
    }
    Ok(bound)
}

/// Maximum absolute row sum of `L_sym(G − F) − L_sym(G)`, an upper bound on
/// its spectral norm since the matrix is symmetric. Only rows and columns of
/// vertices touched by `F` are nonzero.
fn normalized_shift_row_bound(g: &Graph, removed: &[Edge]) -> f64 {
    let n = g.n();
    let lost = deleted_degrees(n, removed);
    let d = |v: usize| g.degree(v) as f64;
    let d_after = |v: usize| (g.degree(v) - lost[v]) as f64;
    let mut row = vec![0.0; n];
    for u in (0..n).filter(|&u| lost[u] > 0) {
        for &w in g.neighbors(u) {
            // visit each pair once: from its smaller touched endpoint
            if lost[w] > 0 && w < u {
                continue;
            }
            let before = 1.0 / (d(u) * d(w)).sqrt();
            let gone = removed
                .binary_search(&crate::graph::canonical(u, w))
                .is_ok();
            let shift = if gone {
                before
            } else {
                (before - 1.0 / (d_after(u) * d_after(w)).sqrt()).abs()
            };
            row[u] += shift;
            row[w] += shift;
        }
    }
    row.into_iter().fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChernoffReport {
    /// `λ_n(G)` of `D − A`.
    pub top_eigenvalue: f64,
    /// `max{6·p·λ_n(G), 24·ln n}`.
    pub bound: f64,
    /// The same bound with `log₂ n`.
    pub bound_log2: f64,
    pub trials: usize,
    /// Trials with `λ_max(E_F) ≤ bound`.
    pub satisfied: usize,
    /// Trials violating `λ_max(E_F) ≤ 2·maxdeg(V, F)` (beyond rounding).
    pub degree_bound_violations: usize,
    pub max_observed: f64,
    /// Per trial `λ_max(E_F)`.
    pub observed: Vec<f64>,
}

impl ChernoffReport {
    pub fn satisfied_fraction(&self) -> f64 {
        self.satisfied as f64 / self.trials as f64
    }
}

/// Frequency of `λ_max(E_F) ≤ max{6pλ_n(G), 24 ln n}`. Each `λ_max(E_F)` is
/// computed exactly from the components of `(V, F)`.
pub fn chernoff_norm_trials(g: &Graph, p: f64, trials: usize, seed: u64) -> Result<ChernoffReport> {
    check_probability(p)?;
    if trials == 0 || g.n() == 0 {
        return Err(Error::validation(
            "Chernoff check needs a nonempty graph and at least one trial",
        ));
    }
    let top_eigenvalue = *eigenvalues(g, LaplacianKind::Unnormalized)?
        .last()
        .expect("n >= 1");
    let n = g.n() as f64;
    let bound = (6.0 * p * top_eigenvalue).max(24.0 * n.ln());
    let bound_log2 = (6.0 * p * top_eigenvalue).max(24.0 * n.log2());

    let per_trial: Vec<Result<(f64, bool)>> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let removed = removed_edges(g, &deletion_mask(g, p, seed, trial));
            let mut top: f64 = 0.0;
            let mut classical_ok = true;
            for c in deletion_components(g.n(), &removed)? {
                let block = c.laplacian();
                let value = *symmetric_eigenvalues(&block)?
                    .last()
                    .expect("nonempty block");
                let max_deg = *c.degrees().iter().max().expect("nonempty block") as f64;
                classical_ok &= value <= 2.0 * max_deg + residual_tolerance(&block);
                top = top.max(value);
            }
            Ok((top, classical_ok))
        })
        .collect();

    let mut observed = Vec::with_capacity(trials);
    let mut violations = 0;
    for r in per_trial {
        let (top, ok) = r?;
        observed.push(top);
        violations += usize::from(!ok);
    }
    let satisfied = observed.iter().filter(|&&x| x <= bound).count();
    let max_observed = observed.iter().copied().fold(0.0, f64::max);
    Ok(ChernoffReport {
        top_eigenvalue,
        bound,
        bound_log2,
        trials,
        satisfied,
        degree_bound_violations: violations,
        max_observed,
        observed,
    })
}

/// Per-trial norms of the degree-normalized deletion matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedNorms {
    /// `‖D⁻¹E1_F‖ = max_i deg_F(i)/d_i`.
    pub degree_part: f64,
    /// `‖D⁻¹E2_F‖`, the largest singular value.
    pub adjacency_part: f64,
    /// Spectral radius of `D⁻¹E2_F`, equal to `‖D^{-1/2}E2_F D^{-1/2}‖`.
    pub adjacency_radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedNormReport {
    /// The threshold `p + q` from the weak normalized assumption.
    pub threshold: f64,
    pub q: f64,
    pub trials: usize,
    pub degree_part_satisfied: usize,
    pub adjacency_part_satisfied: usize,
    pub adjacency_radius_satisfied: usize,
    pub max_degree_part: f64,
    pub max_adjacency_part: f64,
    pub max_adjacency_radius: f64,
    pub per_trial: Vec<NormalizedNorms>,
}

/// Compares the norms of `D⁻¹E1_F` and `D⁻¹E2_F` with `p + q` over random
/// deletions. `D⁻¹E2_F` is not symmetric: its singular-value norm
/// `√λ_max(E2_F D⁻² E2_F)` and its spectral radius are both reported.
pub fn normalized_norm_trials(
    g: &Graph,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<NormalizedNormReport> {
    check_probability(p)?;
    if trials == 0 {
        return Err(Error::validation("norm check needs at least one trial"));
    }
    let scale = normalized_deletion_scale(g, p)?;
    let per_trial = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let removed = removed_edges(g, &deletion_mask(g, p, seed, trial));
            normalized_norms(g, &removed)
        })
        .collect::<Result<Vec<_>>>()?;

    let count = |f: fn(&NormalizedNorms) -> f64| {
        per_trial.iter().filter(|x| f(x) <= scale.threshold).count()
    };
    let max = |f: fn(&NormalizedNorms) -> f64| per_trial.iter().map(f).fold(0.0, f64::max);
    Ok(NormalizedNormReport {
        threshold: scale.threshold,
        q: scale.q,
        trials,
        degree_part_satisfied: count(|x| x.degree_part),
        adjacency_part_satisfied: count(|x| x.adjacency_part),
        adjacency_radius_satisfied: count(|x| x.adjacency_radius),
        max_degree_part: max(|x| x.degree_part),
        max_adjacency_part: max(|x| x.adjacency_part),
        max_adjacency_radius: max(|x| x.adjacency_radius),
        per_trial,
    })
}

/// Norms of `D⁻¹E1_F` and `D⁻¹E2_F` for one deletion set; `D` holds the
/// degrees of `G`, which must all be positive.
pub fn normalized_norms(g: &Graph, removed: &[Edge]) -> Result<NormalizedNorms> {
    if g.has_isolated_vertex() {
        return Err(Error::domain(
            "degree normalization needs every vertex to have an edge",
        ));
    }
    let mut norms = NormalizedNorms {
        degree_part: 0.0,
        adjacency_part: 0.0,
        adjacency_radius: 0.0,
    };
    for c in deletion_components(g.n(), removed)? {
        let degrees: Vec<f64> = c.vertices.iter().map(|&v| g.degree(v) as f64).collect();
        for (&f, &d) in c.degrees().iter().zip(&degrees) {
            norms.degree_part = norms.degree_part.max(f as f64 / d);
        }
        let (gram, surrogate) = adjacency_blocks(&c, &degrees);
        let top = *symmetric_eigenvalues(&gram)?
            .last()
            .expect("nonempty block");
        norms.adjacency_part = norms.adjacency_part.max(top.max(0.0).sqrt());
        let values = symmetric_eigenvalues(&surrogate)?;
        let radius = values
            .first()
            .unwrap()
            .abs()
            .max(values.last().unwrap().abs());
        norms.adjacency_radius = norms.adjacency_radius.max(radius);
    }
    Ok(norms)
}

/// `(E2 D⁻² E2, D^{-1/2} E2 D^{-1/2})` restricted to one component.
fn adjacency_blocks(c: &DeletionComponent, degrees: &[f64]) -> (DenseSymMatrix, DenseSymMatrix) {
    let size = c.vertices.len();
    let mut nbrs = vec![Vec::new(); size];
    let mut surrogate = DenseSymMatrix::zeros(size);
    for &(a, b) in &c.edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
        surrogate.set(a, b, 1.0 / (degrees[a] * degrees[b]).sqrt());
    }
    let mut gram = DenseSymMatrix::zeros(size);
    for (mid, list) in nbrs.iter().enumerate() {
        let w = 1.0 / (degrees[mid] * degrees[mid]);
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[..=i] {
                gram.add_to(a, b, w);
            }
        }
    }
    (gram, surrogate)
}
