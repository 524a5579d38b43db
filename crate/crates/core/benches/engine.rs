//! Sequential vs parallel evaluation of the hot tensor loops on the
//! `ψ₃` image of the side-by-side configuration.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use torelli_core::johnson::{psi_image, BPConfiguration};
use torelli_core::par::Execution;
use torelli_core::symplectic::SymplecticSpace;
use torelli_core::tensor::Tensor;
use torelli_core::DEFAULT_TERM_CAP;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn image(n: usize, g: usize) -> Tensor {
    let c = BPConfiguration::figure4(n).padded(g).unwrap();
    psi_image(&c).unwrap()
}

fn engine(c: &mut Criterion) {
    let g = 9;
    let t3 = image(3, g);
    let t2 = image(2, g);
    let lone = image(1, g).lift().unwrap();
    let (_, map) = SymplecticSpace::new(g).unwrap().generators().swap_remove(1);

    let mut grp = c.benchmark_group("engine");
    grp.sample_size(20);
    for (name, exec) in MODES {
        grp.bench_with_input(BenchmarkId::new("wedge", name), &exec, |b, &e| {
            b.iter(|| black_box(t2.wedge_with(&lone, e).unwrap()))
        });
        grp.bench_with_input(BenchmarkId::new("expand", name), &exec, |b, &e| {
            b.iter(|| black_box(t3.expand_with(DEFAULT_TERM_CAP, e).unwrap()))
        });
        grp.bench_with_input(BenchmarkId::new("apply_map", name), &exec, |b, &e| {
            b.iter(|| black_box(t3.apply_map_with(&map, e).unwrap()))
        });
        grp.bench_with_input(
            BenchmarkId::new("surviving_contraction", name),
            &exec,
            |b, &e| b.iter(|| black_box(t3.surviving_contraction(1, DEFAULT_TERM_CAP, e).unwrap())),
        );
    }
    grp.finish();
}

criterion_group!(benches, engine);
criterion_main!(benches);
