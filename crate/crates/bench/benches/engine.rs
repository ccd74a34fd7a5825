use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};

use dorg_bench::{ai_tasks, large_firm, worked_example};
use dorg_core::ledger::{Ledger, Payload};
use dorg_core::oracle::OracleConfig;
use dorg_core::{allocate, level_weight, simulate};

fn bench_allocate(c: &mut Criterion) {
    let scenario = worked_example();
    c.bench_function("allocate/worked_example", |b| b.iter(|| allocate(black_box(&scenario)).unwrap()));

    let mut group = c.benchmark_group("allocate/large_firm");
    for per_level in [10, 100, 1_000] {
        let firm = large_firm(8, per_level);
        group.bench_with_input(BenchmarkId::from_parameter(8 * per_level), &firm, |b, firm| {
            b.iter(|| allocate(black_box(firm)).unwrap())
        });
    }
    group.finish();
}

fn bench_level_weight(c: &mut Criterion) {
    c.bench_function("level_weight/partition_64", |b| {
        b.iter(|| (1..=64).map(|n| level_weight(n, black_box(64)).unwrap()).sum::<f64>())
    });
}

fn bench_simulate(c: &mut Criterion) {
    let scenario = worked_example();
    let tasks = ai_tasks(5);
    let config = OracleConfig {
        automation_rate: 0.3,
        ..OracleConfig::default()
    };
    c.bench_function("simulate/20_cycles", |b| {
        b.iter(|| simulate(black_box(&scenario), &tasks, &config, 20).unwrap())
    });
}

fn bench_ledger(c: &mut Criterion) {
    let report = simulate(&worked_example(), &ai_tasks(5), &OracleConfig::default(), 1)
        .unwrap()
        .remove(0);
    c.bench_function("ledger/append_cycle", |b| {
        b.iter_batched(
            || {
                let dir = tempfile::tempdir().unwrap();
                let ledger = Ledger::open(dir.path().join("ledger.jsonl")).unwrap();
                (dir, ledger)
            },
            |(dir, mut ledger)| {
                ledger.append(&Payload::Cycle(report.clone())).unwrap();
                dir
            },
            BatchSize::PerIteration,
        )
    });
}

criterion_group!(benches, bench_allocate, bench_level_weight, bench_simulate, bench_ledger);
criterion_main!(benches);
