use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use swapkit::boolean_algebra::powerset_algebra;
use swapkit::exec::Exec;
use swapkit::swap::{full_swap, swap_violation_with, LogicId};
use swapkit::verify::{characterization, Options};

const PATHS: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn swap_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("swap_violation");
    for (logic, atoms) in [(LogicId::MbC, 2), (LogicId::MbC, 3), (LogicId::Ci, 4)] {
        let b = full_swap(logic, powerset_algebra(atoms).unwrap()).unwrap();
        for (name, exec) in PATHS {
            group.bench_with_input(
                BenchmarkId::new(name, format!("{logic}/{atoms}")),
                &b,
                |bench, b| bench.iter(|| black_box(swap_violation_with(logic, b, exec))),
            );
        }
    }
    group.finish();
}

fn restriction_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("characterization");
    group.sample_size(10);
    for (name, exec) in PATHS {
        let opts = Options {
            max_atoms: 1,
            samples: 20,
            exec,
            ..Options::default()
        };
        group.bench_function(name, |bench| {
            bench.iter(|| black_box(characterization(&opts).checked))
        });
    }
    group.finish();
}

criterion_group!(benches, swap_check, restriction_sweep);
criterion_main!(benches);
