use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use kummer_core::invariants::FactorialCheckpoints;
use kummer_core::modarith::{poly_roots_mod, Montgomery};
use kummer_core::survey::{process_prime_with, sieve};
use kummer_core::{PrimePair, Regularity};

const PAIRS: [(u64, u64); 3] = [(5, 1_000_081), (7, 9_999_991), (7, 99_999_971)];

fn factorial_pass(c: &mut Criterion) {
    let mut g = c.benchmark_group("factorial_pass");
    for (p, n) in PAIRS {
        let pair = PrimePair::new(p, n).unwrap();
        g.throughput(Throughput::Elements(n));
        g.bench_with_input(BenchmarkId::from_parameter(n), &pair, |b, pair| {
            b.iter(|| FactorialCheckpoints::compute(black_box(pair)))
        });
    }
    g.finish();
}

fn serial_factorial(c: &mut Criterion) {
    let n = 1_000_081u64;
    let mont = Montgomery::new(n);
    c.bench_function("serial_factorial/1000081", |b| {
        b.iter(|| {
            let mut acc = mont.one();
            let mut k = mont.one();
            for _ in 1..n {
                acc = mont.mul(acc, k);
                k = mont.add(k, mont.one());
            }
            black_box(acc)
        })
    });
}

fn process_prime(c: &mut Criterion) {
    let mut g = c.benchmark_group("process_prime");
    g.sample_size(10);
    for (p, n) in PAIRS {
        let pair = PrimePair::new(p, n).unwrap();
        let reg = Regularity::new(p).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &pair, |b, &pair| {
            b.iter(|| process_prime_with(black_box(pair), &reg, false))
        });
    }
    g.finish();
}

fn cubic_roots(c: &mut Criterion) {
    c.bench_function("cubic_roots/99999971", |b| {
        b.iter(|| poly_roots_mod(black_box(&[1, 41, 54, 1]), black_box(99_999_971)))
    });
}

fn sieve_progression(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve");
    g.sample_size(10);
    g.bench_function("p7_to_1e8", |b| {
        b.iter(|| sieve(7, 2, black_box(100_000_000)))
    });
    g.finish();
}

criterion_group!(
    benches,
    factorial_pass,
    serial_factorial,
    process_prime,
    cubic_roots,
    sieve_progression
);
criterion_main!(benches);
