//! Distances between k-partitions.
//!
//! Both distances minimise, over bijections between parts, the summed size
//! (or volume) of part-wise symmetric differences. With
//! `c_ij = w(P_i) + w(Q_j) − 2·w(P_i ∩ Q_j)` this is a square assignment
//! problem.

mod assignment;

pub use assignment::min_cost_assignment;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceKind {
    /// Vertex counts.
    Size,
    /// Degree sums.
    Volume,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionDistance {
    pub value: u64,
    /// Part `i` of the first partition is matched with part `matching[i]`
    /// of the second.
    pub matching: Vec<usize>,
    /// The part counts differed and the smaller side was padded with empty
    /// parts.
    pub padded: bool,
}

pub fn d_size(p: &Partition, q: &Partition) -> Result<PartitionDistance> {
    check_same_vertices(p, q)?;
    Ok(weighted_distance(p, q, |_| 1))
}

pub fn d_vol(g: &Graph, p: &Partition, q: &Partition) -> Result<PartitionDistance> {
    check_same_vertices(p, q)?;
    if p.n() != g.n() {
        return Err(Error::validation(format!(
            "partitions over {} vertices used with a graph on {}",
            p.n(),
            g.n()
        )));
    }
    Ok(weighted_distance(p, q, |v| g.degree(v) as u64))
}

/// `d_size` or `d_vol` by `kind`.
pub fn distance(
    g: &Graph,
    p: &Partition,
    q: &Partition,
    kind: DistanceKind,
) -> Result<PartitionDistance> {
    match kind {
        DistanceKind::Size => d_size(p, q),
        DistanceKind::Volume => d_vol(g, p, q),
    }
}

/// `d({S, S̄}, {T, T̄})` divided by `n` (size) or `vol(G)` (volume).
pub fn epsilon_close(g: &Graph, s: &VertexSet, t: &VertexSet, kind: DistanceKind) -> Result<f64> {
    let n = g.n();
    if s.universe() != n || t.universe() != n {
        return Err(Error::validation(
            "vertex sets must range over the graph's vertices",
        ));
    }
    let d = distance(
        g,
        &Partition::bipartition(s),
        &Partition::bipartition(t),
        kind,
    )?;
    let scale = match kind {
        DistanceKind::Size => n as f64,
        DistanceKind::Volume => 2.0 * g.m() as f64,
    };
    if scale == 0.0 {
        return Err(Error::domain("normalizer is zero"));
    }
    Ok(d.value as f64 / scale)
}

/// Size distance between `{S, S̄}` and `{T, T̄}`:
/// `2·min(|S △ T|, n − |S △ T|)`.
pub fn bipartition_size_distance(s: &VertexSet, t: &VertexSet) -> usize {
    let x = s.symmetric_difference_len(t);
    2 * x.min(s.universe() - x)
}

fn check_same_vertices(p: &Partition, q: &Partition) -> Result<()> {
    if p.n() != q.n() {
        return Err(Error::validation(format!(
            "partitions cover different vertex sets: {} vs {} vertices",
            p.n(),
            q.n()
        )));
    }
    Ok(())
}

fn weighted_distance(
    p: &Partition,
    q: &Partition,
    weight: impl Fn(usize) -> u64,
) -> PartitionDistance {
    let k = p.k().max(q.k());
    let mut wp = vec![0u64; k];
    let mut wq = vec![0u64; k];
    let mut both = vec![0u64; k * k];
    for (v, (&a, &b)) in p.labels().iter().zip(q.labels()).enumerate() {
        let w = weight(v);
        wp[a] += w;
        wq[b] += w;
        both[a * k + b] += w;
    }
    let cost: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (wp[i] + wq[j] - 2 * both[i * k + j]) as i64)
                .collect()
        })
        .collect();
    let (total, matching) = min_cost_assignment(&cost);
    PartitionDistance {
        value: total as u64,
        matching,
        padded: p.k() != q.k(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::gen_complete;

    fn parts(n: usize, ps: &[&[usize]]) -> Partition {
        Partition::from_parts(n, &ps.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identical_and_crossed_pairs() {
        let p = parts(4, &[&[0, 1], &[2, 3]]);
        let q = parts(4, &[&[0, 2], &[1, 3]]);
        assert_eq!(d_size(&p, &p).unwrap().value, 0);
        assert_eq!(d_size(&p, &q).unwrap().value, 4);
    }

    #[test]
    fn volume_on_complete_graph() {
        let k4 = gen_complete(4).unwrap();
        let p = parts(4, &[&[0], &[1, 2, 3]]);
        let q = parts(4, &[&[1], &[0, 2, 3]]);
        assert_eq!(d_vol(&k4, &p, &q).unwrap().value, 12);
        assert_eq!(d_vol(&k4, &p, &p).unwrap().value, 0);
    }

    #[test]
    fn epsilon_closeness() {
        let g = Graph::empty(10);
        let s = VertexSet::new(10, 0..5).unwrap();
        let t = VertexSet::new(10, [0, 1, 2, 3, 5]).unwrap();
        assert_eq!(epsilon_close(&g, &s, &s, DistanceKind::Size).unwrap(), 0.0);
        assert_eq!(
            epsilon_close(&g, &s, &s.complement(), DistanceKind::Size).unwrap(),
            0.0
        );
        assert_eq!(epsilon_close(&g, &s, &t, DistanceKind::Size).unwrap(), 0.4);
        assert_eq!(bipartition_size_distance(&s, &t), 4);
    }

    #[test]
    fn padding_is_flagged() {
        let p = parts(4, &[&[0, 1, 2, 3]]);
        let q = parts(4, &[&[0, 1], &[2, 3]]);
        let d = d_size(&p, &q).unwrap();
        assert!(d.padded);
        assert_eq!(d.value, 4);
        assert!(!d_size(&q, &q).unwrap().padded);
    }

    #[test]
    fn mismatched_vertex_sets_rejected() {
        let p = parts(3, &[&[0], &[1, 2]]);
        let q = parts(4, &[&[0, 1], &[2, 3]]);
        assert!(matches!(d_size(&p, &q), Err(Error::Validation(_))));
    }

    #[test]
    fn matching_is_reported() {
        let p = parts(4, &[&[0, 1], &[2, 3]]);
        let q = parts(4, &[&[2, 3], &[0, 1]]);
        let d = d_size(&p, &q).unwrap();
        assert_eq!((d.value, d.matching), (0, vec![1, 0]));
    }
}
