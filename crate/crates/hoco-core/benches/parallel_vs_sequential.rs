//! Compares the rayon-backed execution paths against the forced-sequential
//! fallback on representative workloads.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hoco_core::exec;
use hoco_core::simpset::{homology, product, standard_simplex};

fn product_homology(n: usize) -> (usize, Vec<i64>) {
    let a = standard_simplex(n, n);
    let b = standard_simplex(1, n);
    let p = product(&a, &b).unwrap();
    let groups = homology(p.sset(), n.saturating_sub(1)).unwrap();
    let top = groups.last().cloned().unwrap();
    (top.free_rank, top.torsion)
}

fn bench_product_homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("simplex_times_interval_homology");
    for n in [3usize, 4] {
        g.bench_with_input(BenchmarkId::new("parallel", n), &n, |bch, &n| {
            bch.iter(|| product_homology(n))
        });
        g.bench_with_input(BenchmarkId::new("sequential", n), &n, |bch, &n| {
            bch.iter(|| exec::sequential(|| product_homology(n)))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_product_homology);
criterion_main!(benches);
