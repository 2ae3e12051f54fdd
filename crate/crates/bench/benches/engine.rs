use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use ringlab::catalog::{example31, t3};
use ringlab::ideal::all_right_ideals;
use ringlab::orbit::{pair_orbits, submodule_orbits};
use ringlab::pair::{classify_all_pairs, is_free, AdmissibilityMode, PairAtlas};
use ringlab::{OrbitMode, PairSet};

fn construction(c: &mut Criterion) {
    c.bench_function("build t3(3)", |b| b.iter(|| t3(black_box(3)).unwrap()));
    c.bench_function("build example31(3)", |b| b.iter(|| example31(black_box(3)).unwrap()));
}

fn classification(c: &mut Criterion) {
    let r2 = example31(2).unwrap();
    let r3 = example31(3).unwrap();
    c.bench_function("classify example31(2)", |b| {
        b.iter(|| classify_all_pairs(black_box(&r2), AdmissibilityMode::Auto))
    });
    c.bench_function("pair atlas example31(3)", |b| b.iter(|| PairAtlas::new(black_box(&r3))));
    c.bench_function("right ideals example31(3)", |b| b.iter(|| all_right_ideals(black_box(&r3)).unwrap()));
}

fn orbits(c: &mut Criterion) {
    let r = t3(2).unwrap();
    let free = PairSet::from_fn(&r, |p| is_free(&r, p));
    c.bench_function("pair orbits t3(2) bfs", |b| {
        b.iter(|| pair_orbits(&r, black_box(&free), OrbitMode::GeneratorBfs).unwrap())
    });
    c.bench_function("submodule orbits t3(2) bfs", |b| {
        b.iter(|| submodule_orbits(&r, black_box(&free), OrbitMode::GeneratorBfs).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = construction, classification, orbits
}
criterion_main!(benches);
