use criterion::{criterion_group, criterion_main, Criterion};
use pentachain::builtin;
use pentachain::chain::build_chain;
use pentachain::geometry::{assign_geometry, DEFAULT_RETRIES};
use pentachain::pachner::random_walk;
use pentachain::pentagon::run_suite;
use pentachain::torsion::select_partition;
use std::hint::black_box;

fn invariants(c: &mut Criterion) {
    for (name, t) in [("s3", builtin::s3()), ("rp3", builtin::rp3())] {
        c.bench_function(&format!("invariant/{name}"), |b| {
            b.iter(|| pentachain::invariant(black_box(&t), 0, DEFAULT_RETRIES).unwrap())
        });
        let g = assign_geometry(&t, 0, DEFAULT_RETRIES).unwrap();
        c.bench_function(&format!("build_chain/{name}"), |b| {
            b.iter(|| build_chain(black_box(&t), &g).unwrap())
        });
        let chain = build_chain(&t, &g).unwrap();
        c.bench_function(&format!("partition/{name}"), |b| {
            b.iter(|| select_partition(black_box(&chain), None).unwrap())
        });
    }
    let grown = random_walk(&builtin::rp3(), 20, 1, 16);
    c.bench_function(&format!("invariant/rp3_walk_{}tets", grown.tet_count()), |b| {
        b.iter(|| pentachain::invariant(black_box(&grown), 0, DEFAULT_RETRIES).unwrap())
    });
}

fn pentagon(c: &mut Criterion) {
    c.bench_function("pentagon_suite/10", |b| b.iter(|| run_suite(black_box(0), 10).unwrap()));
}

criterion_group!(benches, invariants, pentagon);
criterion_main!(benches);
