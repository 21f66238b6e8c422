use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use gibbstate::{
    periodic_point_measure, weighted_preimage_measure, DynamicalSystem, MarkovOracle, Point,
    TreeOptions,
};
use gibbstate_bench::{
    beta_potential, cosine_potential, folded_torus, full_two_shift, golden_pair,
    zero_torus_potential,
};

fn tree_expansion(c: &mut Criterion) {
    let opts = TreeOptions::default();
    let shift = full_two_shift();
    let beta = beta_potential(&shift);
    let zero = Point::periodic(&[0]).unwrap();
    c.bench_function("tree/shift_depth_10", |b| {
        b.iter(|| weighted_preimage_measure(&shift, &beta, black_box(&zero), 10, &opts).unwrap())
    });

    let torus = folded_torus();
    let phi = zero_torus_potential();
    let origin = Point::torus_i64(&[(0, 1), (0, 1)]);
    c.bench_function("tree/torus_depth_10_exact", |b| {
        b.iter(|| weighted_preimage_measure(&torus, &phi, black_box(&origin), 10, &opts).unwrap())
    });

    let cosine = cosine_potential();
    c.bench_function("tree/torus_depth_8_trig_potential", |b| {
        b.iter(|| weighted_preimage_measure(&torus, &cosine, black_box(&origin), 8, &opts).unwrap())
    });
}

fn fixed_point_enumeration(c: &mut Criterion) {
    let torus = folded_torus();
    c.bench_function("fixpoints/torus_period_8", |b| {
        b.iter(|| torus.fixed_points(black_box(8), 1 << 20, false).unwrap())
    });

    let shift = full_two_shift();
    let beta = beta_potential(&shift);
    c.bench_function("fixpoints/shift_measure_period_12", |b| {
        b.iter(|| periodic_point_measure(&shift, &beta, black_box(12), 1 << 20, false).unwrap())
    });
}

fn oracle_cylinder_sums(c: &mut Criterion) {
    let (sys, phi) = golden_pair();
    let oracle = MarkovOracle::new(&sys, &phi).unwrap();
    let words = sys.words(12);
    c.bench_function("oracle/golden_cylinders_len_12", |b| {
        b.iter(|| {
            let mut acc = 0.0;
            for w in &words {
                acc += oracle.cylinder(black_box(w));
            }
            acc
        })
    });
}

criterion_group!(
    benches,
    tree_expansion,
    fixed_point_enumeration,
    oracle_cylinder_sums
);
criterion_main!(benches);
