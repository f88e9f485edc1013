use andlift_core::comm::comm_rank;
use andlift_core::measures::{global_measures, local_measures};
use andlift_core::optkern::{fractional_cover, SetSystem};
use andlift_core::trees::{build_zero_dt, zero_dt_to_adt};
use andlift_core::zoo::{self, projective_lines, FamilySpec};
use andlift_core::{BitVec, MultilinearPoly, Rational, TruthTable};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_boolean(n: usize, seed: u64) -> MultilinearPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    TruthTable::from_predicate(n, |_| rng.gen_bool(0.5)).unwrap().to_poly().unwrap()
}

fn bench_mobius(c: &mut Criterion) {
    let mut group = c.benchmark_group("mobius");
    for n in [8usize, 12, 16] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        let table = TruthTable::from_fn(n, |_| Rational::from_integer(rng.gen_range(0..2))).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &table, |b, t| b.iter(|| black_box(t.to_poly().unwrap())));
    }
    group.finish();
}

fn bench_fano_lp(c: &mut Criterion) {
    let fano = SetSystem::new(7, projective_lines(2).unwrap()).unwrap();
    c.bench_function("fano_fractional_cover", |b| b.iter(|| black_box(fractional_cover(&fano))));
    let f = zoo::generate(&FamilySpec::ProjectivePlane { m: 2 }).unwrap();
    c.bench_function("fano_local_measures", |b| b.iter(|| black_box(local_measures(&f, &BitVec::empty(7)))));
}

fn bench_global_measures(c: &mut Criterion) {
    let mut group = c.benchmark_group("global_measures");
    group.sample_size(10);
    for n in [4usize, 6, 8] {
        let f = random_boolean(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| black_box(global_measures(f).unwrap())));
    }
    group.finish();
}

fn bench_zero_dt(c: &mut Criterion) {
    let mut group = c.benchmark_group("zero_dt_to_adt");
    for n in [6usize, 8, 10] {
        let f = random_boolean(n, 11);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| {
            b.iter(|| {
                let dt = build_zero_dt(f).unwrap();
                black_box(zero_dt_to_adt(&dt, f.n()))
            })
        });
    }
    group.finish();
}

fn bench_comm_rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("comm_rank");
    group.sample_size(10);
    for n in [4usize, 6, 8] {
        let f = random_boolean(n, 13);
        group.bench_with_input(BenchmarkId::from_parameter(n), &f, |b, f| b.iter(|| black_box(comm_rank(f).unwrap())));
    }
    group.finish();
}

criterion_group!(benches, bench_mobius, bench_fano_lp, bench_global_measures, bench_zero_dt, bench_comm_rank);
criterion_main!(benches);
