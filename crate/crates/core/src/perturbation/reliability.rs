use rayon::prelude::*;

use super::{check_probability, deletion_mask};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Monte Carlo estimate of the probability that random deletion splits no
/// connected component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReliabilityEstimate {
    pub p: f64,
    pub trials: usize,
    /// Trials in which every component survived.
    pub preserved: usize,
    pub estimate: f64,
    /// Sample standard deviation over `√trials`.
    pub stderr: f64,
}

pub fn reliability(g: &Graph, p: f64, trials: usize, seed: u64) -> Result<ReliabilityEstimate> {
    check_probability(p)?;
    if trials == 0 {
        return Err(Error::validation("reliability needs at least one trial"));
    }
    let base = g.connected_components().k();
    let preserved = (0..trials as u64)
        .into_par_iter()
        .filter(|&t| component_count_after(g, &deletion_mask(g, p, seed, t)) == base)
        .count();
    let estimate = preserved as f64 / trials as f64;
    let stderr = if trials > 1 {
        // sample variance of a 0/1 sequence
        let var = (preserved as f64 * (1.0 - estimate).powi(2)
            + (trials - preserved) as f64 * estimate.powi(2))
            / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(ReliabilityEstimate {
        p,
        trials,
        preserved,
        estimate,
        stderr,
    })
}

/// Component count of `G` minus the edges flagged in `removed`.
pub(crate) fn component_count_after(g: &Graph, removed: &[bool]) -> usize {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut count = n;
    for (&(u, v), &gone) in g.edges().iter().zip(removed) {
        if gone {
            continue;
        }
        let (mut a, mut b) = (u, v);
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        while parent[b] != b {
            parent[b] = parent[parent[b]];
            b = parent[b];
        }
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}
