//! Exhaustive ground truth for small instances.
//!
//! Every routine enumerates its full search space and refuses inputs beyond
//! a fixed size instead of running for hours. Ratios are compared exactly by
//! integer cross-multiplication.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::metrics::{epsilon_close, DistanceKind};
use crate::partition::Partition;
use crate::spectra::{eigenvalues, LaplacianKind};

pub const MAX_BIPARTITION_VERTICES: usize = 20;
pub const MAX_KWAY_VERTICES: usize = 10;
pub const MAX_KWAY_PARTS: usize = 4;
pub const MAX_PERMUTATION_PARTS: usize = 8;
pub const MAX_RELIABILITY_EDGES: usize = 20;
pub const MAX_STABILITY_VERTICES: usize = 12;

#[derive(Debug, Clone, Copy)]
struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    fn cmp(&self, other: &Ratio) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }

    fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        return Err(Error::TooLarge { what, value, limit });
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | (1 << w)))
        .collect()
}

fn mask_members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

#[derive(Clone, Copy)]
enum CutObjective {
    Ratio,
    Conductance,
}

/// Minimum over all bipartitions. The reported side has at most `n/2`
/// vertices (for an even split, the side containing vertex 0); among equal
/// objective values the lexicographically smallest such side wins.
fn brute_min_cut(g: &Graph, objective: CutObjective) -> Result<(VertexSet, f64)> {
    let n = g.n();
    if n < 2 {
        return Err(Error::domain(format!("bipartitions need n >= 2, got {n}")));
    }
    guard("vertex count", n, MAX_BIPARTITION_VERTICES)?;
    let adj = adjacency_masks(g);
    let degrees: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    let total_volume: u64 = degrees.iter().sum();
    let full: u32 = (1u32 << n) - 1;

    let mut best: Option<(Ratio, Vec<usize>)> = None;
    for rest in 0..(1u32 << (n - 1)) - 1 {
        let t = (rest << 1) | 1;
        let outside = full & !t;
        let mut cut = 0u64;
        let mut vol = 0u64;
        let mut bits = t;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            cut += (adj[u] & outside).count_ones() as u64;
            vol += degrees[u];
        }
        let size = t.count_ones() as usize;
        let den = match objective {
            CutObjective::Ratio => size.min(n - size) as u64,
            CutObjective::Conductance => vol.min(total_volume - vol),
        };
        if den == 0 {
            continue;
        }
        let ratio = Ratio { num: cut, den };
        let order = best.as_ref().map(|(b, _)| ratio.cmp(b));
        if matches!(order, Some(Ordering::Greater)) {
            continue;
        }
        let side = if 2 * size <= n { t } else { outside };
        let members = mask_members(side, n);
        let replace = match (order, &best) {
            (Some(Ordering::Equal), Some((_, current))) => members < *current,
            _ => true,
        };
        if replace {
            best = Some((ratio, members));
        }
    }
    let (ratio, members) =
        best.ok_or_else(|| Error::domain("no bipartition has a defined objective"))?;
    Ok((VertexSet::from_sorted_unchecked(n, members), ratio.value()))
}

/// `α(G)` and a minimizing set, by enumerating all `2^(n−1) − 1`
/// bipartitions. Requires `2 ≤ n ≤ 20`.
pub fn brute_min_cut_ratio(g: &Graph) -> Result<(VertexSet, f64)> {
    brute_min_cut(g, CutObjective::Ratio)
}

/// `φ(G)` and a minimizing set; bipartitions with a zero-volume side are
/// skipped. Requires `2 ≤ n ≤ 20`.
pub fn brute_min_conductance(g: &Graph) -> Result<(VertexSet, f64)> {
    brute_min_cut(g, CutObjective::Conductance)
}

/// `ρ_G(k)`: minimum over k-partitions with non-empty parts of the largest
/// part conductance. Requires `n ≤ 10`, `2 ≤ k ≤ min(4, n)` and no isolated
/// vertex. Ties keep the first partition in restricted-growth order.
pub fn brute_kway_expansion(g: &Graph, k: usize) -> Result<(Partition, f64)> {
    let n = g.n();
    guard("vertex count", n, MAX_KWAY_VERTICES)?;
    guard("part count", k, MAX_KWAY_PARTS)?;
    if k < 2 || k > n {
        return Err(Error::domain(format!(
            "k-way expansion needs 2 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if g.has_isolated_vertex() {
        return Err(Error::domain(
            "k-way expansion needs every vertex to have an edge",
        ));
    }
    let total_volume = 2 * g.m() as u64;
    let mut labels = vec![0usize; n];
    let mut best: Option<(Ratio, Vec<usize>)> = None;

    let mut visit = |labels: &[usize]| {
        let mut cut = vec![0u64; k];
        let mut vol = vec![0u64; k];
        for v in 0..n {
            vol[labels[v]] += g.degree(v) as u64;
        }
        for &(u, v) in g.edges() {
            if labels[u] != labels[v] {
                cut[labels[u]] += 1;
                cut[labels[v]] += 1;
            }
        }
        let worst = (0..k)
            .map(|i| Ratio {
                num: cut[i],
                den: vol[i].min(total_volume - vol[i]),
            })
            .max_by(|a, b| a.cmp(b))
            .expect("k >= 2");
        if best
            .as_ref()
            .is_none_or(|(b, _)| worst.cmp(b) == Ordering::Less)
        {
            best = Some((worst, labels.to_vec()));
        }
    };
    restricted_growth(&mut labels, 1, 1, k, &mut visit);

    let (ratio, labels) = best.expect("k <= n admits a partition");
    Ok((Partition::from_labels_unchecked(k, labels), ratio.value()))
}

/// Calls `visit` on every restricted-growth string of length `labels.len()`
/// using exactly `k` symbols, in lexicographic order. `labels[0] = 0`.
fn restricted_growth(
    labels: &mut [usize],
    pos: usize,
    used: usize,
    k: usize,
    visit: &mut impl FnMut(&[usize]),
) {
    let n = labels.len();
    if pos == n {
        if used == k {
            visit(labels);
        }
        return;
    }
    if k - used > n - pos {
        return;
    }
    for l in 0..=used.min(k - 1) {
        labels[pos] = l;
        restricted_growth(labels, pos + 1, used.max(l + 1), k, visit);
    }
}

/// Partition distance by trying every bijection between parts; the part
/// counts are padded to the larger one. Requires at most 8 parts.
pub fn brute_partition_distance(
    g: &Graph,
    p: &Partition,
    q: &Partition,
    kind: DistanceKind,
) -> Result<u64> {
    let n = p.n();
    if q.n() != n || (kind == DistanceKind::Volume && g.n() != n) {
        return Err(Error::validation(
            "partitions and graph must share a vertex set",
        ));
    }
    let k = p.k().max(q.k());
    guard("part count", k, MAX_PERMUTATION_PARTS)?;
    let weight = |v: usize| match kind {
        DistanceKind::Size => 1u64,
        DistanceKind::Volume => g.degree(v) as u64,
    };
    // Σ_i w(P_i △ Q_σ(i)) counts each misplaced vertex once on each side
    let mut best = u64::MAX;
    let mut sigma: Vec<usize> = (0..k).collect();
    permutations(&mut sigma, 0, &mut |sigma| {
        let d: u64 = (0..n)
            .filter(|&v| sigma[p.label(v)] != q.label(v))
            .map(|v| 2 * weight(v))
            .sum();
        best = best.min(d);
    });
    Ok(best)
}

fn permutations(items: &mut [usize], start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Exact reliability: the probability that deleting each edge independently
/// with probability `p` leaves the number of connected components unchanged.
/// Requires `m ≤ 20`.
pub fn brute_reliability(g: &Graph, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::validation(format!("p = {p} is not a probability")));
    }
    let m = g.m();
    guard("edge count", m, MAX_RELIABILITY_EDGES)?;
    let n = g.n();
    let base = g.connected_components().k();
    let edges = g.edges();
    let mut parent = vec![0usize; n];
    let mut total = 0.0;
    for failed in 0u32..(1u32 << m) {
        parent.iter_mut().enumerate().for_each(|(i, x)| *x = i);
        let mut components = n;
        for (e, &(u, v)) in edges.iter().enumerate() {
            if failed >> e & 1 == 1 {
                continue;
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                components -= 1;
            }
        }
        if components == base {
            let f = failed.count_ones() as i32;
            total += p.powi(f) * (1.0 - p).powi(m as i32 - f);
        }
    }
    Ok(total)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// How far near-optimal sparse cuts stray from the optimal ones.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityEnvelope {
    pub rho: f64,
    /// Sets `S` (smaller side, as in [`brute_min_cut_ratio`]) with
    /// `α_G(S) ≤ ρ·α(G)`.
    pub approximate_count: usize,
    pub optimal_count: usize,
    /// Largest size-closeness between an approximate and an optimal set.
    pub max_epsilon: f64,
    /// `ρ·λ₂·√(Δ/λ₃³)`.
    pub scale: f64,
    /// `max_epsilon / scale`: the smallest constant `c` for which every
    /// approximate set is `c·scale`-close to every optimum. `None` when
    /// `scale` is zero or undefined.
    pub fitted_constant: Option<f64>,
}

/// Enumerates all bipartitions of a graph with `n ≤ 12` and measures the
/// closeness of every `ρ`-approximate cut-ratio solution to every optimum.
pub fn stability_envelope(g: &Graph, rho: f64) -> Result<StabilityEnvelope> {
    let n = g.n();
    guard("vertex count", n, MAX_STABILITY_VERTICES)?;
    if rho.is_nan() || rho < 1.0 {
        return Err(Error::validation(format!(
            "approximation factor must be >= 1, got {rho}"
        )));
    }
    let (_, alpha) = brute_min_cut_ratio(g)?;
    let full: u32 = (1u32 << n) - 1;
    let mut optimal = Vec::new();
    let mut approximate = Vec::new();
    for rest in 0..(1u32 << (n - 1)) - 1 {
        let t = (rest << 1) | 1;
        let set = VertexSet::from_mask(&(0..n).map(|v| t >> v & 1 == 1).collect::<Vec<_>>());
        let ratio = g.cut_ratio(&set)?;
        let side = if 2 * set.len() <= n {
            set
        } else {
            VertexSet::from_mask(
                &(0..n)
                    .map(|v| (full & !t) >> v & 1 == 1)
                    .collect::<Vec<_>>(),
            )
        };
        // slack absorbs the rounding of two separately computed quotients
        if ratio <= alpha * (1.0 + 1e-12) {
            optimal.push(side.clone());
        }
        if ratio <= rho * alpha * (1.0 + 1e-12) {
            approximate.push(side);
        }
    }
    let mut max_epsilon: f64 = 0.0;
    for s in &approximate {
        for t in &optimal {
            max_epsilon = max_epsilon.max(epsilon_close(g, s, t, DistanceKind::Size)?);
        }
    }
    let values = eigenvalues(g, LaplacianKind::Unnormalized)?;
    let (l2, l3) = (values[1], values.get(2).copied().unwrap_or(0.0));
    let scale = rho * l2.max(0.0) * (g.max_degree() as f64 / l3.powi(3)).sqrt();
    let fitted_constant = (scale.is_finite() && scale > 0.0).then(|| max_epsilon / scale);
    Ok(StabilityEnvelope {
        rho,
        approximate_count: approximate.len(),
        optimal_count: optimal.len(),
        max_epsilon,
        scale,
        fitted_constant,
    })
}
