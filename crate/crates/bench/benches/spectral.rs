use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use spectral_sens_bench::{striped_partition, two_block_graph};
use spectral_sens_core::metrics::min_cost_assignment;
use spectral_sens_core::{
    average_sensitivity, d_size, eigensystem, nsc2, nsc_kmeans, usc2, Algorithm, KMeansConfig,
    LaplacianKind, SensitivityConfig,
};

fn eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigensystem");
    for n in [50, 100, 200] {
        let g = two_block_graph(n);
        for (label, kind) in [
            ("unnormalized", LaplacianKind::Unnormalized),
            ("normalized", LaplacianKind::NormalizedRandomWalk),
        ] {
            group.bench_with_input(BenchmarkId::new(label, n), &g, |b, g| {
                b.iter(|| eigensystem(g, kind).unwrap())
            });
        }
    }
    group.finish();
}

fn clustering(c: &mut Criterion) {
    let g = two_block_graph(100);
    let cfg = KMeansConfig::default();
    c.bench_function("usc2/100", |b| b.iter(|| usc2(&g).unwrap()));
    c.bench_function("nsc2/100", |b| b.iter(|| nsc2(&g).unwrap()));
    c.bench_function("nsc_kmeans_k2/100", |b| {
        b.iter(|| nsc_kmeans(&g, 2, &cfg).unwrap())
    });
}

fn assignment(c: &mut Criterion) {
    let mut group = c.benchmark_group("assignment");
    for k in [2, 8, 32] {
        let cost: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| ((i * 31 + j * 17) % 97) as i64).collect())
            .collect();
        group.bench_with_input(BenchmarkId::new("hungarian", k), &cost, |b, cost| {
            b.iter(|| min_cost_assignment(cost))
        });
        let p = striped_partition(1000, k, 1);
        let q = striped_partition(1000, k, 3);
        group.bench_with_input(BenchmarkId::new("d_size_n1000", k), &(p, q), |b, (p, q)| {
            b.iter(|| d_size(p, q).unwrap())
        });
    }
    group.finish();
}

fn sensitivity(c: &mut Criterion) {
    let g = two_block_graph(100);
    let cfg = SensitivityConfig::new(1e-2, 50, 0);
    let mut group = c.benchmark_group("sensitivity_50_trials");
    group.sample_size(10);
    for (label, algo) in [
        ("usc2", Algorithm::Usc2),
        ("nsc2", Algorithm::Nsc2),
        (
            "nsc_kmeans_k2",
            Algorithm::NscKMeans {
                k: 2,
                config: KMeansConfig::default(),
            },
        ),
    ] {
        group.bench_function(label, |b| {
            b.iter(|| average_sensitivity(&g, &algo, &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, eigensolver, clustering, assignment, sensitivity);
criterion_main!(benches);
