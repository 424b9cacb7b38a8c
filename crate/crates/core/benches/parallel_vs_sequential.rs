//! Sequential against data-parallel execution on the two hot loops: lattice
//! path enumeration and the cubic discriminant grid.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use severi_core::exec::Exec;
use severi_core::hyperelliptic::{cubic_grid_agreement, rational_grid};
use severi_core::rational::q;
use severi_core::tropical::enumerate_curves;
use std::hint::black_box;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn tropical(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_curves");
    group.sample_size(10);
    for (d, delta) in [(3, 3), (4, 2)] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("d{d}_delta{delta}")), &exec, |b, &exec| {
                b.iter(|| enumerate_curves(black_box(d), black_box(delta), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn discriminant_grid(c: &mut Criterion) {
    let values = rational_grid(&q(-5), &q(5), 41);
    let mut group = c.benchmark_group("cubic_grid_agreement");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| cubic_grid_agreement(black_box(&values), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, tropical, discriminant_grid);
criterion_main!(benches);
