//! Immutable simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// An undirected edge in canonical form `(u, v)` with `u < v`.
pub type Edge = (usize, usize);

/// Canonical form of an unordered pair.
#[inline]
pub fn canonical(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph.
///
/// Edges are stored as canonical pairs sorted lexicographically, so every
/// iteration order over edges is deterministic. Adjacency lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

/// Degree statistics of a graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub max_degree: usize,
    pub min_degree: usize,
    /// `vol(G) = 2m`.
    pub volume: u64,
    /// `max_i sum_{j ~ i} 1/d_j^2`; `None` when some vertex is isolated.
    pub gamma: Option<f64>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Duplicates (in either
    /// orientation) collapse; self-loops and out-of-range ids are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::validation(format!("self-loop on vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::validation(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            list.push(canonical(u, v));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_canonical(n, list))
    }

    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    /// `edges` must be canonical, sorted and unique.
    pub(crate) fn from_canonical(n: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        // Lexicographic edge order already yields sorted adjacency lists.
        debug_assert!(adj.iter().all(|a| a.windows(2).all(|w| w[0] < w[1])));
        Graph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of an edge in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&canonical(u, v)).ok()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(Vec::is_empty)
    }

    pub fn stats(&self) -> GraphStats {
        let min_degree = self.min_degree();
        let gamma = if self.n > 0 && min_degree >= 1 {
            let inv_sq: Vec<f64> = self
                .adj
                .iter()
                .map(|a| {
                    let d = a.len() as f64;
                    1.0 / (d * d)
                })
                .collect();
            let mut acc = vec![0.0; self.n];
            for &(u, v) in &self.edges {
                acc[u] += inv_sq[v];
                acc[v] += inv_sq[u];
            }
            Some(acc.into_iter().fold(0.0, f64::max))
        } else {
            None
        };
        GraphStats {
            max_degree: self.max_degree(),
            min_degree,
            volume: 2 * self.m() as u64,
            gamma,
        }
    }

    /// `G - F`. Every edge of `removed` must belong to the graph.
    pub fn remove_edges(&self, removed: &[Edge]) -> Result<Graph> {
        let mut drop = vec![false; self.m()];
        for &(u, v) in removed {
            match self.edge_index(u, v) {
                Some(i) => drop[i] = true,
                None => {
                    return Err(Error::validation(format!(
                        "edge ({u}, {v}) is not an edge of the graph"
                    )))
                }
            }
        }
        Ok(self.without_marked(&drop))
    }

    /// Drops the edges whose flag in `drop` (indexed like [`Graph::edges`]) is set.
    pub(crate) fn without_marked(&self, drop: &[bool]) -> Graph {
        let kept = self
            .edges
            .iter()
            .zip(drop)
            .filter(|(_, &d)| !d)
            .map(|(&e, _)| e)
            .collect();
        Graph::from_canonical(self.n, kept)
    }

    /// Connected components, labelled in order of their smallest vertex.
    pub fn connected_components(&self) -> Partition {
        const UNSEEN: usize = usize::MAX;
        let mut labels = vec![UNSEEN; self.n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if labels[start] != UNSEEN {
                continue;
            }
            labels[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if labels[w] == UNSEEN {
                        labels[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        Partition::from_labels_unchecked(next, labels)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.connected_components().k() == 1
    }

    /// Sum of degrees over `s`.
    pub fn volume(&self, s: &VertexSet) -> u64 {
        s.iter().map(|v| self.adj[v].len() as u64).sum()
    }

    /// `|E(S, V \ S)|`.
    pub fn cut_size(&self, s: &VertexSet) -> usize {
        let mask = s.mask();
        s.iter()
            .map(|u| self.adj[u].iter().filter(|&&w| !mask[w]).count())
            .sum()
    }

    /// `|E(S, S̄)| / min(|S|, |S̄|)`.
    pub fn cut_ratio(&self, s: &VertexSet) -> Result<f64> {
        self.check_proper(s)?;
        let small = s.len().min(self.n - s.len());
        Ok(self.cut_size(s) as f64 / small as f64)
    }

    /// `|E(S, S̄)| / min(vol(S), vol(S̄))`.
    pub fn conductance(&self, s: &VertexSet) -> Result<f64> {
        self.check_proper(s)?;
        let vol_s = self.volume(s);
        let denom = vol_s.min(2 * self.m() as u64 - vol_s);
        if denom == 0 {
            return Err(Error::domain(
                "conductance undefined: a side has zero volume",
            ));
        }
        Ok(self.cut_size(s) as f64 / denom as f64)
    }

    fn check_proper(&self, s: &VertexSet) -> Result<()> {
        if s.universe() != self.n {
            return Err(Error::validation(format!(
                "vertex set over {} vertices used with a graph on {}",
                s.universe(),
                self.n
            )));
        }
        if s.is_empty() || s.len() == self.n {
            return Err(Error::domain("cut requires a nonempty proper subset"));
        }
        Ok(())
    }
}

/// A sorted set of vertex ids drawn from `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&v| v >= universe) {
            return Err(Error::validation(format!(
                "vertex {bad} out of range for {universe} vertices"
            )));
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { universe, members })
    }

    pub(crate) fn from_sorted_unchecked(universe: usize, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { universe, members }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        let members = mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
            .collect();
        VertexSet {
            universe: mask.len(),
            members,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.universe];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    pub fn complement(&self) -> VertexSet {
        let mask = self.mask();
        VertexSet {
            universe: self.universe,
            members: (0..self.universe).filter(|&v| !mask[v]).collect(),
        }
    }

    pub fn symmetric_difference_len(&self, other: &VertexSet) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        let (a, b) = (&self.members, &other.members);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    count += 1;
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    count += 1;
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        count + (a.len() - i) + (b.len() - j)
    }
}
