use criterion::{black_box, criterion_group, criterion_main, Criterion};
use freeprob::fubm::{a_table, g_table, FubmOracle};
use freeprob::jacobi::m_series;
use freeprob::ncpart::{alternating_word, mixed_cumulant};
use freeprob::schur::verblunsky;
use freeprob_bench::{gcd_pairs, revert_input};

fn scalar_arith(c: &mut Criterion) {
    let pairs = gcd_pairs();
    c.bench_function("scalar add with gcd", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(x + y);
            }
        })
    });
    c.bench_function("scalar div with gcd", |b| {
        b.iter(|| {
            for (x, y) in &pairs {
                black_box(x / y);
            }
        })
    });
}

fn series(c: &mut Criterion) {
    let f = revert_input(8);
    c.bench_function("revert order 8", |b| b.iter(|| black_box(f.revert().unwrap())));
}

fn tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("tables");
    g.sample_size(20);
    g.bench_function("g_table 8", |b| b.iter(|| black_box(g_table(8).unwrap())));
    g.bench_function("a_table 8", |b| b.iter(|| black_box(a_table(8).unwrap())));
    g.bench_function("jacobi moments 12", |b| b.iter(|| black_box(m_series(12).unwrap())));
    g.bench_function("alternating cumulant 8", |b| {
        let w = alternating_word(8);
        b.iter(|| black_box(mixed_cumulant(&FubmOracle::UNIT, &w).unwrap()))
    });
    g.bench_function("verblunsky depth 3", |b| b.iter(|| black_box(verblunsky(3).unwrap())));
    g.finish();
}

criterion_group!(benches, scalar_arith, series, tables);
criterion_main!(benches);
