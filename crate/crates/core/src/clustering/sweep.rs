use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// The best prefix found by a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepCut {
    pub set: VertexSet,
    /// Objective value of `set`.
    pub value: f64,
}

#[derive(Clone, Copy)]
enum Objective {
    CutRatio,
    Conductance,
}

/// Prefix of the `v`-sorted vertex order with minimum cut ratio.
///
/// Vertices are sorted by `v` ascending, ties by id. Among prefixes with equal
/// ratio the shortest wins.
pub fn sweep_alpha(g: &Graph, v: &[f64]) -> Result<SweepCut> {
    sweep(g, v, Objective::CutRatio)
}

/// Prefix of the `v`-sorted vertex order with minimum conductance. Prefixes
/// whose smaller side has zero volume are skipped.
pub fn sweep_phi(g: &Graph, v: &[f64]) -> Result<SweepCut> {
    sweep(g, v, Objective::Conductance)
}

/// Vertex order used by the sweeps.
pub fn sweep_order(v: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]).then(a.cmp(&b)));
    order
}

fn sweep(g: &Graph, v: &[f64], objective: Objective) -> Result<SweepCut> {
    let n = g.n();
    if n < 2 {
        return Err(Error::domain(format!(
            "sweep needs at least 2 vertices, got {n}"
        )));
    }
    if v.len() != n {
        return Err(Error::validation(format!(
            "sweep vector has length {}, graph has {n} vertices",
            v.len()
        )));
    }
    if let Some(i) = v.iter().position(|x| !x.is_finite()) {
        return Err(Error::validation(format!(
            "sweep vector entry {i} is not finite"
        )));
    }

    let order = sweep_order(v);
    let total_volume = 2 * g.m() as u64;
    let mut inside = vec![false; n];
    let mut cut: u64 = 0;
    let mut volume: u64 = 0;
    // (prefix length, cut, denominator); ratios compared by cross-multiplication
    let mut best: Option<(usize, u64, u64)> = None;

    for (i, &u) in order[..n - 1].iter().enumerate() {
        let deg = g.degree(u) as u64;
        let internal = g.neighbors(u).iter().filter(|&&w| inside[w]).count() as u64;
        inside[u] = true;
        cut = cut + deg - 2 * internal;
        volume += deg;
        let len = i + 1;
        let den = match objective {
            Objective::CutRatio => len.min(n - len) as u64,
            Objective::Conductance => volume.min(total_volume - volume),
        };
        if den == 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((_, bc, bd)) => {
                (cut as u128 * bd as u128).cmp(&(bc as u128 * den as u128)) == Ordering::Less
            }
        };
        if better {
            best = Some((len, cut, den));
        }
    }

    let (len, cut, den) = best.ok_or_else(|| {
        Error::domain("every sweep prefix has a zero-volume side; conductance undefined")
    })?;
    let mut members = order[..len].to_vec();
    members.sort_unstable();
    Ok(SweepCut {
        set: VertexSet::from_sorted_unchecked(n, members),
        value: cut as f64 / den as f64,
    })
}
