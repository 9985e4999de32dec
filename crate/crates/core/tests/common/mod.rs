#![allow(dead_code)]

use proptest::prelude::*;
use spectral_sens_core::generate::gen_erdos_renyi;
use spectral_sens_core::rng::mix_seed;
use spectral_sens_core::Graph;

/// Connected `G(n, p)` sample, redrawn from derived seeds until connected.
pub fn connected_gnp(n: usize, p: f64, seed: u64) -> Graph {
    (0..)
        .map(|attempt| gen_erdos_renyi(n, p, mix_seed(seed, attempt)).unwrap())
        .find(|g| g.is_connected())
        .unwrap()
}

/// Graphs on `lo..=hi` vertices given by an arbitrary edge subset.
pub fn any_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Connected graphs: a random spanning tree plus random extra edges.
pub fn connected_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|v| 0..v).collect();
        (
            parents,
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
        )
            .prop_map(move |(parents, mask)| {
                let tree = parents.into_iter().enumerate().map(|(i, p)| (p, i + 1));
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let extra = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e);
                Graph::new(n, tree.chain(extra)).unwrap()
            })
    })
}
