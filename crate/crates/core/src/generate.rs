//! Graph generators.

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::partition::Partition;
use crate::rng::rng_from_seed;

/// A stochastic block model sample together with its planted partition.
#[derive(Debug, Clone)]
pub struct SbmGraph {
    pub graph: Graph,
    /// Block `i` holds vertices `i*size .. (i+1)*size`.
    pub planted: Partition,
}

fn check_prob(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::validation(format!(
            "{name} = {x} is not a probability"
        )))
    }
}

/// Stochastic block model with `blocks` equal blocks of `size` vertices.
/// Each within-block pair is an edge with probability `p_in`, each
/// cross-block pair with probability `p_out`; pairs are visited in
/// lexicographic order with one uniform draw each.
pub fn gen_sbm(blocks: usize, size: usize, p_in: f64, p_out: f64, seed: u64) -> Result<SbmGraph> {
    if blocks == 0 || size == 0 {
        return Err(Error::validation("SBM needs at least one nonempty block"));
    }
    let n = blocks
        .checked_mul(size)
        .ok_or_else(|| Error::validation("block count times size overflows"))?;
    check_prob("p_in", p_in)?;
    check_prob("p_out", p_out)?;
    if p_out > p_in {
        return Err(Error::validation(format!(
            "SBM requires p_out <= p_in, got {p_out} > {p_in}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let prob = if u / size == v / size { p_in } else { p_out };
            if rng.gen::<f64>() < prob {
                edges.push((u, v));
            }
        }
    }
    let labels = (0..n).map(|v| v / size).collect();
    Ok(SbmGraph {
        graph: Graph::from_canonical(n, edges),
        planted: Partition::new(blocks, labels)?,
    })
}

/// Erdős–Rényi `G(n, p)`.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_prob("p", p)?;
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_canonical(n, edges))
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::validation(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::validation(format!(
            "complete graph needs n >= 3, got {n}"
        )));
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Ok(Graph::from_canonical(n, edges))
}

pub fn gen_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::validation("path needs at least one vertex"));
    }
    Graph::new(n, (1..n).map(|i| (i - 1, i)))
}

/// Places the graphs side by side, shifting ids in order.
pub fn disjoint_union(graphs: &[Graph]) -> Graph {
    let mut offset = 0;
    let mut edges: Vec<Edge> = Vec::new();
    for g in graphs {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
        offset += g.n();
    }
    Graph::from_canonical(offset, edges)
}
