use criterion::{black_box, criterion_group, criterion_main, Criterion};

use vogelkit_bench::corpus_graph;
use vogelkit_core::algebra::AlgebraInstance;
use vogelkit_core::canon::canonicalize;
use vogelkit_core::contract::Contractor;
use vogelkit_core::diagram::build;
use vogelkit_core::family::eval_family_diagram;
use vogelkit_core::kontsevich::{psi_diagram, torus_ki, wheel_value};
use vogelkit_core::lambda::{chi_x, symbolic};
use vogelkit_core::{registry, Family};

fn diagrams(c: &mut Criterion) {
    let petersen = corpus_graph("petersen");
    c.bench_function("canonicalize petersen", |b| b.iter(|| canonicalize(black_box(&petersen)).unwrap()));
    let nested = build::chord_diagram(&[(0, 5), (1, 4), (2, 3)]);
    c.bench_function("psi2 three chords", |b| b.iter(|| psi_diagram(2, black_box(&nested)).unwrap()));
}

fn weight_systems(c: &mut Criterion) {
    let cube = corpus_graph("cube");
    c.bench_function("family polynomial cube so", |b| b.iter(|| eval_family_diagram(black_box(&cube), Family::So).unwrap()));
    let alg = AlgebraInstance::new(Family::Sl, 4).unwrap();
    let contractor = Contractor::new(&alg).unwrap();
    c.bench_function("contract cube sl(4)", |b| b.iter(|| contractor.eval(black_box(&cube)).unwrap()));
}

fn characters(c: &mut Criterion) {
    let e8 = registry().lookup("e8").unwrap().point;
    c.bench_function("chi_x 12 at e8", |b| b.iter(|| chi_x(12, black_box(&e8))));
    c.bench_function("generating function identity order 10", |b| b.iter(|| symbolic::gen_fun_identity(black_box(10))));
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series");
    g.sample_size(10);
    g.bench_function("wheel w6", |b| b.iter(|| wheel_value(black_box(&[6])).unwrap()));
    g.bench_function("torus order 3", |b| b.iter(|| torus_ki(black_box(3)).unwrap()));
    g.finish();
}

criterion_group!(benches, diagrams, weight_systems, characters, series);
criterion_main!(benches);
