use congruence_bench::{l_theorem_ranges, single_threaded, SWEEP_FAMILIES};
use congruence_core::{scan, Family, ScanOptions, ScanRanges};
use criterion::{criterion_group, criterion_main, Criterion};

fn family_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    for family in SWEEP_FAMILIES {
        let ranges = match family {
            Family::LTheorems => l_theorem_ranges(120),
            _ => ScanRanges::moduli(2..=2000),
        };
        group.bench_function(family.as_str(), |b| {
            b.iter(|| scan(family, &ranges, single_threaded()).unwrap())
        });
    }
    group.finish();
}

fn worker_scaling(c: &mut Criterion) {
    let ranges = l_theorem_ranges(200);
    let mut group = c.benchmark_group("scan_workers");
    group.sample_size(10);
    for workers in [1, 2, 4, 8] {
        let options = ScanOptions {
            workers,
            ..ScanOptions::default()
        };
        group.bench_function(format!("l-theorems/{workers}"), |b| {
            b.iter(|| scan(Family::LTheorems, &ranges, options).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, family_sweeps, worker_scaling);
criterion_main!(benches);
