use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use witt_core::arith::rat;
use witt_core::conics::{find_rational_point, holzer_bound, witness_set, witt_distinguish};
use witt_core::hyperfield::verify_axioms;
use witt_core::localglobal::{local_square_class_hyperfield, quaternion_ramification};
use witt_core::quadfields::imaginary_class_group_oracle;
use witt_core::Place;

fn ramification_sweep(c: &mut Criterion) {
    c.bench_function("quaternion_ramification |a|,|b| <= 30", |bench| {
        bench.iter(|| {
            let mut ramified = 0;
            for a in (-30i64..=30).filter(|&a| a != 0) {
                for b in (-30i64..=30).filter(|&b| b != 0) {
                    ramified += quaternion_ramification(&rat(a), &rat(b)).unwrap().len();
                }
            }
            black_box(ramified)
        })
    });
}

fn point_search(c: &mut Criterion) {
    let (a, b) = (rat(-217), rat(218));
    let bound = holzer_bound(&a, &b).unwrap() as i64;
    c.bench_function("find_rational_point(-217, 218)", |bench| {
        bench.iter(|| find_rational_point(black_box(&a), black_box(&b), bound).unwrap())
    });
}

fn certificates(c: &mut Criterion) {
    c.bench_function("witness_set", |bench| bench.iter(|| witness_set().unwrap()));
    let args = [rat(-1), rat(-1), rat(-217), rat(-1)];
    c.bench_function("witt_distinguish R4", |bench| {
        bench.iter(|| witt_distinguish(&args[0], &args[1], &args[2], &args[3]).unwrap())
    });
}

fn axioms(c: &mut Criterion) {
    let h = local_square_class_hyperfield(Place::Finite(2));
    c.bench_function("verify_axioms Q(Q_2)", |bench| {
        bench.iter(|| verify_axioms(black_box(&h)))
    });
}

fn class_groups(c: &mut Criterion) {
    c.bench_function("imaginary class group d = -969969", |bench| {
        bench.iter(|| imaginary_class_group_oracle(black_box(-969_969)).unwrap())
    });
}

criterion_group!(
    benches,
    ramification_sweep,
    point_search,
    certificates,
    axioms,
    class_groups
);
criterion_main!(benches);
