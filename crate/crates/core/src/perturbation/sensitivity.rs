use rayon::prelude::*;

use super::{check_probability, deletion_mask, Algorithm};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{distance, DistanceKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensitivityConfig {
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub kind: DistanceKind,
    /// Divide distances by `vol(G)`.
    pub normalize: bool,
}

impl SensitivityConfig {
    /// Size distance normalized by volume.
    pub fn new(p: f64, trials: usize, seed: u64) -> Self {
        SensitivityConfig {
            p,
            trials,
            seed,
            kind: DistanceKind::Size,
            normalize: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrialOutcome {
    /// Raw, unnormalized partition distance.
    Distance(u64),
    /// The algorithm could not run on `G − F`.
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial: u64,
    /// `|F|`.
    pub removed: usize,
    pub outcome: TrialOutcome,
}

/// Monte Carlo estimate of `E_F[d(A(G), A(G − F))]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityEstimate {
    pub p: f64,
    pub kind: DistanceKind,
    pub normalized: bool,
    /// Requested trials.
    pub trials: usize,
    pub completed: usize,
    pub skipped: usize,
    /// Mean over completed trials, divided by `vol(G)` when normalized.
    pub mean: f64,
    /// Sample standard deviation over `√completed`; 0 for a single trial.
    pub stderr: f64,
    /// Mean over all trials with each skipped trial counted at the largest
    /// possible distance (`2n` for size, `2·vol(G)` for volume).
    pub mean_skipped_as_max: f64,
    pub per_trial: Vec<TrialRecord>,
}

/// Runs `algo` once on `G` and once per trial on `G − F`, `F ~_p E`.
///
/// Trials whose algorithm run fails (for example, an isolated vertex under a
/// normalized algorithm) are recorded as skipped with the error text. A trial
/// with `F = ∅` has distance 0 without rerunning the algorithm, since every
/// algorithm is deterministic.
pub fn average_sensitivity(
    g: &Graph,
    algo: &Algorithm,
    cfg: &SensitivityConfig,
) -> Result<SensitivityEstimate> {
    check_probability(cfg.p)?;
    if cfg.trials == 0 {
        return Err(Error::validation("sensitivity needs at least one trial"));
    }
    let volume = 2.0 * g.m() as f64;
    if cfg.normalize && volume == 0.0 {
        return Err(Error::domain(
            "cannot normalize by the volume of an edgeless graph",
        ));
    }
    let reference = algo.run(g)?;

    let per_trial: Vec<TrialRecord> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mask = deletion_mask(g, cfg.p, cfg.seed, trial);
            let removed = mask.iter().filter(|&&d| d).count();
            let outcome = if removed == 0 {
                TrialOutcome::Distance(0)
            } else {
                let perturbed = g.without_marked(&mask);
                match algo
                    .run(&perturbed)
                    .and_then(|q| distance(g, &reference, &q, cfg.kind))
                {
                    Ok(d) => TrialOutcome::Distance(d.value),
                    Err(e) => TrialOutcome::Skipped(e.to_string()),
                }
            };
            TrialRecord {
                trial,
                removed,
                outcome,
            }
        })
        .collect();

    let scale = if cfg.normalize { volume } else { 1.0 };
    let values: Vec<f64> = per_trial
        .iter()
        .filter_map(|r| match r.outcome {
            TrialOutcome::Distance(d) => Some(d as f64 / scale),
            TrialOutcome::Skipped(_) => None,
        })
        .collect();
    let completed = values.len();
    let skipped = cfg.trials - completed;
    if completed == 0 {
        return Err(Error::domain(format!(
            "all {} trials were skipped; first reason: {}",
            cfg.trials,
            match &per_trial[0].outcome {
                TrialOutcome::Skipped(reason) => reason.as_str(),
                TrialOutcome::Distance(_) => unreachable!(),
            }
        )));
    }
    let (mean, stderr) = mean_and_stderr(&values);
    let max_distance = match cfg.kind {
        DistanceKind::Size => 2.0 * g.n() as f64,
        DistanceKind::Volume => 2.0 * volume,
    } / scale;
    let mean_skipped_as_max =
        (mean * completed as f64 + max_distance * skipped as f64) / cfg.trials as f64;

    Ok(SensitivityEstimate {
        p: cfg.p,
        kind: cfg.kind,
        normalized: cfg.normalize,
        trials: cfg.trials,
        completed,
        skipped,
        mean,
        stderr,
        mean_skipped_as_max,
        per_trial,
    })
}

/// Mean and standard error (sample standard deviation over `√len`).
pub(crate) fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{disjoint_union, gen_complete, gen_cycle};

    #[test]
    fn zero_probability_gives_zero() {
        let g = gen_complete(20).unwrap();
        let est =
            average_sensitivity(&g, &Algorithm::Usc2, &SensitivityConfig::new(0.0, 50, 3)).unwrap();
        assert_eq!((est.mean, est.stderr, est.completed), (0.0, 0.0, 50));
    }

    #[test]
    fn separated_triangles_are_stable() {
        let t = gen_complete(3).unwrap();
        let g = disjoint_union(&[t.clone(), t]);
        let est = average_sensitivity(
            &g,
            &Algorithm::Usc2,
            &SensitivityConfig::new(0.001, 1000, 7),
        )
        .unwrap();
        let zero = est
            .per_trial
            .iter()
            .filter(|r| r.outcome == TrialOutcome::Distance(0))
            .count();
        assert!(zero >= 990, "{zero}");
    }

    #[test]
    fn long_cycle_is_unstable_under_normalized_clustering() {
        let g = gen_cycle(50).unwrap();
        let est = average_sensitivity(&g, &Algorithm::Nsc2, &SensitivityConfig::new(0.01, 300, 1))
            .unwrap();
        assert!(est.mean > 0.1, "{est:?}");
    }

    #[test]
    fn skipped_trials_are_recorded() {
        // every deletion isolates a vertex of the path 0-1
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let est =
            average_sensitivity(&g, &Algorithm::Nsc2, &SensitivityConfig::new(0.5, 40, 2)).unwrap();
        assert!(est.skipped > 0);
        assert_eq!(est.completed + est.skipped, 40);
        assert!(est.mean_skipped_as_max >= est.mean * est.completed as f64 / 40.0);
        let reasons = est
            .per_trial
            .iter()
            .filter(|r| matches!(&r.outcome, TrialOutcome::Skipped(s) if s.contains("isolated")))
            .count();
        assert_eq!(reasons, est.skipped);
    }

    #[test]
    fn reproducible() {
        let g = gen_cycle(12).unwrap();
        let cfg = SensitivityConfig::new(0.1, 64, 99);
        let a = average_sensitivity(&g, &Algorithm::Usc2, &cfg).unwrap();
        let b = average_sensitivity(&g, &Algorithm::Usc2, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
