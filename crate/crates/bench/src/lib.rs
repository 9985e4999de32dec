//! Shared fixtures for the benchmarks.

use spectral_sens_core::generate::gen_sbm;
use spectral_sens_core::{Graph, Partition};

/// A two-block model graph on `n` vertices, fixed seed.
pub fn two_block_graph(n: usize) -> Graph {
    gen_sbm(2, n / 2, 0.5, 0.05, 7)
        .expect("valid block model")
        .graph
}

/// A partition of `n` vertices into `k` parts by a fixed stride.
pub fn striped_partition(n: usize, k: usize, stride: usize) -> Partition {
    Partition::new(k, (0..n).map(|v| (v / stride) % k).collect()).expect("valid labels")
}
