use criterion::{criterion_group, criterion_main, Criterion};
use mckay_core::beilinson::gabriel_quiver_oracle;
use mckay_core::quiver::{
    covering_quiver, default_search_depth, make_canonical_quiver, quiver_qsg, reflection_search,
};
use mckay_core::{AlgebraSpec, CyclicGroupAction, Family, NcAlgebra, SkewGroupAlgebra};
use std::hint::black_box;

fn commutative(wx: u32, wy: u32) -> AlgebraSpec {
    AlgebraSpec::new(wx, wy, Family::Quantum(1.into())).unwrap()
}

fn quotient(c: &mut Criterion) {
    let spec = commutative(1, 3);
    let alg = NcAlgebra::new(spec);
    let act = CyclicGroupAction::new(&alg, 6).unwrap();
    let sg = SkewGroupAlgebra::new(&alg, &act);
    c.bench_function("quotient dims (1,3) r=6 D=24", |b| {
        b.iter(|| sg.quotient_by_ideal_e_dims(black_box(24)))
    });
}

fn gabriel(c: &mut Criterion) {
    let spec = commutative(1, 1);
    c.bench_function("gabriel oracle (1,1) r=4", |b| {
        b.iter(|| gabriel_quiver_oracle(black_box(&spec), 4).unwrap())
    });
}

fn quivers(c: &mut Criterion) {
    let spec = commutative(1, 3);
    let q = quiver_qsg(&spec, 6).unwrap();
    c.bench_function("canonical labeling Q_S,G (1,3) r=6", |b| {
        b.iter(|| black_box(&q).certificate(true))
    });
    let source = covering_quiver(&spec, 3).unwrap();
    let goal = make_canonical_quiver(3, 9).unwrap();
    let depth = default_search_depth(&source);
    c.bench_function("reflection search (1,3) c=3", |b| {
        b.iter(|| reflection_search(black_box(&source), &goal, depth).unwrap())
    });
}

criterion_group!(benches, quotient, gabriel, quivers);
criterion_main!(benches);
