use crate::error::{Error, Result};
use crate::graph::Edge;
use crate::spectra::DenseSymMatrix;

/// The Laplacian `E_F` of the graph `(V, F)` and its split
/// `E_F = E1_F − E2_F` into degree (diagonal) and adjacency parts.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationMatrices {
    pub laplacian: DenseSymMatrix,
    pub degree_part: DenseSymMatrix,
    pub adjacency_part: DenseSymMatrix,
}

impl PerturbationMatrices {
    /// Assembles the three matrices in integer arithmetic, then converts.
    pub fn new(n: usize, removed: &[Edge]) -> Result<Self> {
        check_edges(n, removed)?;
        let idx = |i: usize, j: usize| i * n + j;
        let mut laplacian = vec![0i64; n * n];
        let mut degree = vec![0i64; n * n];
        let mut adjacency = vec![0i64; n * n];
        for &(u, v) in removed {
            // E_e = (e_u − e_v)(e_u − e_v)ᵀ
            laplacian[idx(u, u)] += 1;
            laplacian[idx(v, v)] += 1;
            laplacian[idx(u, v)] -= 1;
            laplacian[idx(v, u)] -= 1;
            degree[idx(u, u)] += 1;
            degree[idx(v, v)] += 1;
            adjacency[idx(u, v)] += 1;
            adjacency[idx(v, u)] += 1;
        }
        debug_assert!((0..n * n).all(|i| laplacian[i] == degree[i] - adjacency[i]));
        let lift = |m: &[i64]| {
            let mut out = DenseSymMatrix::zeros(n);
            for i in 0..n {
                for j in 0..=i {
                    out.set(i, j, m[idx(i, j)] as f64);
                }
            }
            out
        };
        Ok(PerturbationMatrices {
            laplacian: lift(&laplacian),
            degree_part: lift(&degree),
            adjacency_part: lift(&adjacency),
        })
    }
}

fn check_edges(n: usize, edges: &[Edge]) -> Result<()> {
    for &(u, v) in edges {
        if u == v || u >= n || v >= n {
            return Err(Error::validation(format!(
                "({u}, {v}) is not an edge on {n} vertices"
            )));
        }
    }
    Ok(())
}

/// A connected component of `(V, F)` with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionComponent {
    /// Global ids, sorted.
    pub vertices: Vec<usize>,
    /// Edges in local ids (positions in `vertices`).
    pub edges: Vec<Edge>,
}

impl DeletionComponent {
    /// Laplacian of the component in local ids.
    pub fn laplacian(&self) -> DenseSymMatrix {
        let mut m = DenseSymMatrix::zeros(self.vertices.len());
        for &(a, b) in &self.edges {
            m.add_to(a, a, 1.0);
            m.add_to(b, b, 1.0);
            m.add_to(a, b, -1.0);
        }
        m
    }

    /// `F`-degree of each local vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }
}

/// Splits the deleted edges into the components of `(V, F)`; isolated
/// vertices are omitted. Components appear in order of their smallest vertex.
pub fn deletion_components(n: usize, removed: &[Edge]) -> Result<Vec<DeletionComponent>> {
    check_edges(n, removed)?;
    let mut touched: Vec<usize> = removed.iter().flat_map(|&(u, v)| [u, v]).collect();
    touched.sort_unstable();
    touched.dedup();
    let local = |v: usize| touched.binary_search(&v).expect("touched");
    let mut parent: Vec<usize> = (0..touched.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in removed {
        let (a, b) = (root(&mut parent, local(u)), root(&mut parent, local(v)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut slot = vec![usize::MAX; touched.len()];
    let mut out: Vec<DeletionComponent> = Vec::new();
    let mut position = vec![0usize; touched.len()];
    for i in 0..touched.len() {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(DeletionComponent {
                vertices: Vec::new(),
                edges: Vec::new(),
            });
        }
        let c = &mut out[slot[r]];
        position[i] = c.vertices.len();
        c.vertices.push(touched[i]);
    }
    for &(u, v) in removed {
        let (a, b) = (local(u), local(v));
        let c = slot[root(&mut parent, a)];
        out[c].edges.push((position[a], position[b]));
    }
    Ok(out)
}
