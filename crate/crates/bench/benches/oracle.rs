use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sbc_core::branching::{linear_profile, Oracle, ThresholdTable};
use sbc_core::lr::{lr_hook, lr_multi};
use sbc_core::wreath::WreathTower;
use sbc_core::{HookPartition, Partition};

fn hook(n: usize, x: usize) -> HookPartition {
    HookPartition::new(n, x).unwrap()
}

/// Cold restriction: a fresh oracle each iteration, so class and table
/// construction is included.
fn bench_restrict(c: &mut Criterion) {
    let mut group = c.benchmark_group("restrict");
    group.sample_size(10);
    for n in [8usize, 12, 16, 24] {
        group.bench_with_input(BenchmarkId::new("all_hooks", n), &n, |b, &n| {
            b.iter(|| Oracle::default().restrict_all(black_box(n)).unwrap())
        });
    }
    // the level-4 table is shared; only the level-5 work is measured
    let tower = Arc::new(WreathTower::default());
    tower.char_table(4).unwrap();
    group.bench_function("single_hook/32", |b| {
        b.iter(|| Oracle::new(tower.clone()).restrict(black_box(hook(32, 13))).unwrap())
    });
    group.finish();
}

fn bench_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_table");
    group.sample_size(10);
    for k in [3u32, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| WreathTower::default().char_table(black_box(k)).unwrap())
        });
    }
    group.finish();
}

fn bench_lr(c: &mut Criterion) {
    let mut group = c.benchmark_group("lr");
    let hooks = [hook(4, 1), hook(3, 2), hook(5, 2)];
    let inners: Vec<Partition> = hooks.iter().map(HookPartition::to_partition).collect();
    let target = hook(12, 6);
    group.bench_function("formula", |b| b.iter(|| lr_hook(black_box(target), black_box(&hooks)).unwrap()));
    group.bench_function("tableaux", |b| {
        b.iter(|| lr_multi(black_box(&target.to_partition()), black_box(&inners)).unwrap())
    });
    group.finish();
}

fn bench_formulas(c: &mut Criterion) {
    c.bench_function("linear_profile/31", |b| b.iter(|| linear_profile(black_box(hook(31, 15))).unwrap()));
    let oracle = Arc::new(Oracle::default());
    oracle.restrict_all(16).unwrap();
    c.bench_function("thresholds/64", |b| {
        b.iter(|| {
            let thr = ThresholdTable::new(oracle.clone());
            (0..=23).map(|k| thr.threshold(black_box(64), k).unwrap()).sum::<usize>()
        })
    });
}

criterion_group!(benches, bench_restrict, bench_tables, bench_lr, bench_formulas);
criterion_main!(benches);
