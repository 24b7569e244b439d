use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rbcoalg_core::extension::classify_small;
use rbcoalg_core::oracle::{line, semidirect_fixtures, two_dim};
use rbcoalg_core::wells::{automorphisms, wells_sequence_check};
use rbcoalg_core::{Exec, FieldSpec};

const STRATEGIES: [Exec; 2] = [Exec::Sequential, Exec::Parallel];

fn name(exec: Exec) -> &'static str {
    match exec {
        Exec::Sequential => "sequential",
        Exec::Parallel => "parallel",
    }
}

fn classification(c: &mut Criterion) {
    let f = FieldSpec::Prime(3);
    let coalg = two_dim(f, [[1, 0], [0, 0]], -1).unwrap();
    let m = line(f, "m", 0, -1);
    let mut group = c.benchmark_group("classify_small/gf3-2x1");
    group.sample_size(10);
    for exec in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name(exec)), &exec, |b, &exec| {
            b.iter(|| black_box(classify_small(&coalg, &m, 1 << 20, exec).unwrap()))
        });
    }
    group.finish();
}

fn automorphism_search(c: &mut Criterion) {
    let (_, x) = semidirect_fixtures(3)
        .unwrap()
        .into_iter()
        .find(|(n, _)| n.ends_with("non-abelian/semidirect"))
        .unwrap();
    let mut group = c.benchmark_group("automorphisms/gf3-dim3");
    group.sample_size(10);
    for exec in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name(exec)), &exec, |b, &exec| {
            b.iter(|| black_box(automorphisms(&x.e, 1 << 20, exec).unwrap()))
        });
    }
    group.finish();
}

fn wells_sequence(c: &mut Criterion) {
    let (_, x) = semidirect_fixtures(3).unwrap().swap_remove(4);
    let mut group = c.benchmark_group("wells_sequence_check/gf3-lines");
    for exec in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name(exec)), &exec, |b, &exec| {
            b.iter(|| black_box(wells_sequence_check(&x, 1 << 16, exec).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, classification, automorphism_search, wells_sequence);
criterion_main!(benches);
