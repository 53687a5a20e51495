use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use newton_galois::glp::{glp_monic, glp_normalized};
use newton_galois::{discriminant, factor_degrees, find_criterion_prime, newton_index, GlpParams};

fn discriminants(c: &mut Criterion) {
    let mut group = c.benchmark_group("discriminant");
    for n in [6, 12, 20] {
        let f = glp_monic(GlpParams::new(n, 1, 2).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| discriminant(black_box(f))));
    }
    group.finish();
}

fn newton_indices(c: &mut Criterion) {
    let mut group = c.benchmark_group("newton_index");
    for n in [10, 30, 60] {
        let f = glp_normalized(GlpParams::new(n, 0, 1).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| newton_index(black_box(f))));
    }
    group.finish();
}

fn factor_patterns(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor_degrees");
    let f = glp_normalized(GlpParams::new(30, 0, 1).unwrap());
    for p in [101u64, 1009, 65537] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| b.iter(|| factor_degrees(black_box(&f), p)));
    }
    group.finish();
}

fn criterion_primes(c: &mut Criterion) {
    c.bench_function("find_criterion_prime/alpha=0..5,n=50..120", |b| {
        b.iter(|| {
            for alpha in 0..=5 {
                for n in 50..=120 {
                    black_box(find_criterion_prime(GlpParams::new(n, alpha, 1).unwrap()));
                }
            }
        })
    });
}

criterion_group!(benches, discriminants, newton_indices, factor_patterns, criterion_primes);
criterion_main!(benches);
