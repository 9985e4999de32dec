mod common;

use proptest::prelude::*;
use spectral_sens_core::generate::gen_cycle;
use spectral_sens_core::metrics::{bipartition_size_distance, distance};
use spectral_sens_core::oracle::brute_partition_distance;
use spectral_sens_core::{d_size, d_vol, DistanceKind, Graph, Partition, VertexSet};

use common::any_graph;

/// A graph with three partitions of it into the same number of parts.
fn graph_and_partitions() -> impl Strategy<Value = (Graph, Partition, Partition, Partition)> {
    (any_graph(1, 14), 1usize..=6).prop_flat_map(|(g, k)| {
        let n = g.n();
        let labels = || proptest::collection::vec(0..k, n);
        (labels(), labels(), labels()).prop_map(move |(a, b, c)| {
            let part = |l| Partition::with_empty_parts(k, l).unwrap();
            (g.clone(), part(a), part(b), part(c))
        })
    })
}

fn both_kinds(g: &Graph, p: &Partition, q: &Partition) -> [u64; 2] {
    [DistanceKind::Size, DistanceKind::Volume].map(|kind| distance(g, p, q, kind).unwrap().value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distances_are_metrics((g, p, q, r) in graph_and_partitions()) {
        let pq = both_kinds(&g, &p, &q);
        let qr = both_kinds(&g, &q, &r);
        let pr = both_kinds(&g, &p, &r);
        prop_assert_eq!(pq, both_kinds(&g, &q, &p));
        for i in 0..2 {
            prop_assert!(pr[i] <= pq[i] + qr[i]);
        }
        prop_assert_eq!(pq[0] == 0, p.same_parts(&q));
        prop_assert_eq!(both_kinds(&g, &p, &p), [0, 0]);
    }

    #[test]
    fn matching_equals_permutation_minimum((g, p, q, _) in graph_and_partitions()) {
        for kind in [DistanceKind::Size, DistanceKind::Volume] {
            let fast = distance(&g, &p, &q, kind).unwrap().value;
            prop_assert_eq!(fast, brute_partition_distance(&g, &p, &q, kind).unwrap());
        }
    }

    #[test]
    fn bipartition_closed_form(mask in proptest::collection::vec(any::<(bool, bool)>(), 1..40)) {
        let s = VertexSet::from_mask(&mask.iter().map(|x| x.0).collect::<Vec<_>>());
        let t = VertexSet::from_mask(&mask.iter().map(|x| x.1).collect::<Vec<_>>());
        let d = d_size(&Partition::bipartition(&s), &Partition::bipartition(&t)).unwrap();
        prop_assert_eq!(d.value as usize, bipartition_size_distance(&s, &t));
    }

    #[test]
    fn volume_distance_scales_on_regular_graphs(labels in proptest::collection::vec(0usize..3, 12), other in proptest::collection::vec(0usize..3, 12)) {
        let g = gen_cycle(12).unwrap();
        let p = Partition::with_empty_parts(3, labels).unwrap();
        let q = Partition::with_empty_parts(3, other).unwrap();
        prop_assert_eq!(d_vol(&g, &p, &q).unwrap().value, 2 * d_size(&p, &q).unwrap().value);
    }
}

#[test]
fn mismatched_part_counts_are_padded() {
    let p = Partition::new(2, vec![0, 0, 1, 1]).unwrap();
    let q = Partition::new(3, vec![0, 0, 1, 2]).unwrap();
    let d = d_size(&p, &q).unwrap();
    assert!(d.padded);
    assert_eq!(d.value, 2);
}
