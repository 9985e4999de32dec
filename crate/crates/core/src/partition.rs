//! k-way vertex partitions and their text serialization.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// A labelling of vertices `0..n` with part indices `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    k: usize,
    labels: Vec<usize>,
}

impl Partition {
    /// Every part must be non-empty.
    pub fn new(k: usize, labels: Vec<usize>) -> Result<Self> {
        let p = Self::with_empty_parts(k, labels)?;
        if p.is_degenerate() {
            return Err(Error::validation(format!(
                "partition has empty parts: sizes {:?}",
                p.part_sizes()
            )));
        }
        Ok(p)
    }

    /// Like [`Partition::new`] but allows empty parts; check
    /// [`Partition::is_degenerate`].
    pub fn with_empty_parts(k: usize, labels: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::validation(format!(
                "label {bad} out of range for k = {k}"
            )));
        }
        Ok(Partition { k, labels })
    }

    pub(crate) fn from_labels_unchecked(k: usize, labels: Vec<usize>) -> Self {
        debug_assert!(labels.iter().all(|&l| l < k));
        Partition { k, labels }
    }

    /// `{S, V \ S}` with `S` labelled 0.
    pub fn bipartition(s: &VertexSet) -> Self {
        let labels = s
            .mask()
            .into_iter()
            .map(|inside| usize::from(!inside))
            .collect();
        Partition { k: 2, labels }
    }

    /// Builds a partition from explicit parts covering `0..n` exactly once.
    pub fn from_parts(n: usize, parts: &[Vec<usize>]) -> Result<Self> {
        const UNSET: usize = usize::MAX;
        let mut labels = vec![UNSET; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(Error::validation(format!("vertex {v} out of range")));
                }
                if labels[v] != UNSET {
                    return Err(Error::validation(format!("vertex {v} in two parts")));
                }
                labels[v] = i;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == UNSET) {
            return Err(Error::validation(format!("vertex {v} not covered")));
        }
        Self::with_empty_parts(parts.len(), labels)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn is_degenerate(&self) -> bool {
        self.part_sizes().contains(&0)
    }

    pub fn parts(&self) -> Vec<VertexSet> {
        let mut parts = vec![Vec::new(); self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            parts[l].push(v);
        }
        parts
            .into_iter()
            .map(|p| VertexSet::from_sorted_unchecked(self.n(), p))
            .collect()
    }

    pub fn part(&self, i: usize) -> VertexSet {
        let members = (0..self.n()).filter(|&v| self.labels[v] == i).collect();
        VertexSet::from_sorted_unchecked(self.n(), members)
    }

    /// Relabels parts in order of first appearance; two partitions describe
    /// the same set family iff their canonical forms are equal (ignoring
    /// empty parts).
    pub fn canonical(&self) -> Partition {
        let mut map = vec![usize::MAX; self.k];
        let mut next = 0;
        let labels = self
            .labels
            .iter()
            .map(|&l| {
                if map[l] == usize::MAX {
                    map[l] = next;
                    next += 1;
                }
                map[l]
            })
            .collect();
        Partition {
            k: next.max(usize::from(self.labels.is_empty())),
            labels,
        }
    }

    pub fn same_parts(&self, other: &Partition) -> bool {
        self.canonical() == other.canonical()
    }

    /// One line per vertex: `vertex_id part_index`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.labels.len() * 6);
        for (v, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "{v} {l}");
        }
        out
    }

    /// Parses [`Partition::to_text`] output; lines may come in any order.
    /// `k` is one more than the largest label.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse {
                        line: idx + 1,
                        message: format!("expected `vertex part`, got {line:?}"),
                    })
            };
            let v = parse(it.next())?;
            let l = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: "trailing tokens".into(),
                });
            }
            pairs.push((v, l));
        }
        let n = pairs.len();
        let mut labels = vec![usize::MAX; n];
        for (v, l) in pairs {
            if v >= n || labels[v] != usize::MAX {
                return Err(Error::validation(format!(
                    "vertex ids must be exactly 0..{n}; bad or repeated id {v}"
                )));
            }
            labels[v] = l;
        }
        let k = labels.iter().max().map_or(0, |&l| l + 1);
        Self::with_empty_parts(k, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_any_order() {
        let p = Partition::new(3, vec![2, 0, 1, 0]).unwrap();
        assert_eq!(Partition::from_text(&p.to_text()).unwrap(), p);
        let shuffled = "3 0\n1 0\n0 2\n2 1\n";
        assert_eq!(Partition::from_text(shuffled).unwrap(), p);
        assert!(Partition::from_text("0 0\n0 1\n").is_err());
        assert!(Partition::from_text("0 x\n").is_err());
    }

    #[test]
    fn empty_parts_flagged() {
        assert!(Partition::new(3, vec![0, 0, 1]).is_err());
        let p = Partition::with_empty_parts(3, vec![0, 0, 1]).unwrap();
        assert!(p.is_degenerate());
        assert!(Partition::new(2, vec![0, 2]).is_err());
    }

    #[test]
    fn canonical_ignores_labels() {
        let a = Partition::new(2, vec![0, 0, 1, 1]).unwrap();
        let b = Partition::new(2, vec![1, 1, 0, 0]).unwrap();
        let c = Partition::new(2, vec![1, 0, 0, 1]).unwrap();
        assert!(a.same_parts(&b));
        assert!(!a.same_parts(&c));
    }

    #[test]
    fn from_parts_checks_cover() {
        assert!(Partition::from_parts(3, &[vec![0, 1], vec![2]]).is_ok());
        assert!(Partition::from_parts(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::from_parts(3, &[vec![0, 1]]).is_err());
    }
}
