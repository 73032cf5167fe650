use proptest::prelude::*;

use witt_core::arith::{is_squarefree, primes_up_to, rat, Rational};
use witt_core::conics::{
    conic_isomorphic, find_rational_point, holzer_bound, parametrize, quaternion_splits_over_conic,
    splits, verify_certificate, witt_distinguish,
};
use witt_core::hyperfield::{
    basic_part, find_isomorphisms, is_group_extension, is_quotient_morphism_sampled, prime,
    quotient, verify_axioms, FiniteHyperfield, SubgroupSelection, DEFAULT_ISOMORPHISM_BOUND,
};
use witt_core::localglobal::{
    brute_force_represents, canonical_reps, finite_field_hyperfield,
    finite_field_quadratic_hyperfield, hilbert_symbol, local_square_class_hyperfield,
    padic_square_class, represents, residue_embedding, LocalQuadraticHyperfield, Place,
    RationalQuadraticHyperfield, Scope, SquareClassQ,
};
use witt_core::quadfields::is_sum_two_squares;

fn odd_primes_to(n: u64) -> Vec<u64> {
    primes_up_to(n).into_iter().filter(|&p| p > 2).collect()
}

fn squarefree_in(lim: i64) -> Vec<i64> {
    (-lim..=lim)
        .filter(|&n| n != 0 && is_squarefree(n.unsigned_abs()))
        .collect()
}

fn all_places_to(n: u64) -> Vec<Place> {
    let mut v: Vec<Place> = primes_up_to(n).into_iter().map(Place::Finite).collect();
    v.push(Place::Infinite);
    v
}

// Tables built from every constructor in the crate.
fn constructed_tables() -> Vec<FiniteHyperfield> {
    let mut out = vec![local_square_class_hyperfield(Place::Infinite)];
    for p in primes_up_to(13) {
        out.push(local_square_class_hyperfield(Place::Finite(p)));
    }
    for q in [3, 5, 7, 9, 25, 27] {
        out.push(finite_field_quadratic_hyperfield(q).unwrap());
    }
    for q in [3, 5, 7, 9] {
        out.push(finite_field_hyperfield(q).unwrap());
    }
    out
}

#[test]
fn reversibility_holds_on_constructed_tables() {
    let mut tables = constructed_tables();
    let f7 = finite_field_hyperfield(7).unwrap();
    let sq = SubgroupSelection::generated(&f7, &[2]).unwrap();
    tables.push(quotient(&f7, &sq).unwrap());
    tables.push(prime(&quotient(&f7, &sq).unwrap()));
    for h in &tables {
        for a in h.elements() {
            for b in h.elements() {
                for c in h.elements() {
                    assert_eq!(
                        h.sum_contains(a, b, c),
                        h.sum_contains(c, h.neg(b), a),
                        "{:?}: {a} {b} {c}",
                        h.labels()
                    );
                }
            }
        }
    }
}

#[test]
fn quotients_and_primes_stay_hyperfields() {
    for h in constructed_tables() {
        assert!(verify_axioms(&h).is_ok(), "{:?}", h.labels());
        let n = h.len();
        for g in 1..n {
            let Ok(t) = SubgroupSelection::generated(&h, &[g]) else {
                continue;
            };
            let q = quotient(&h, &t).unwrap();
            assert!(
                verify_axioms(&q).is_ok(),
                "quotient of {:?} by <{g}>",
                h.labels()
            );
            let p = prime(&q);
            assert!(verify_axioms(&p).is_ok());
            for a in q.elements() {
                for b in q.elements() {
                    assert!(q.add(a, b).iter().all(|x| p.sum_contains(a, b, *x)));
                    if a != 0 && b != 0 {
                        assert!(p.sum_contains(a, b, a) && p.sum_contains(a, b, b));
                    }
                }
            }
            // B(T) is a union of T-cosets (checked inside basic_part)
            basic_part(&h, &t).unwrap();
        }
    }
}

#[test]
fn value_sets_contain_the_summands() {
    let mut quadratic: Vec<FiniteHyperfield> = all_places_to(13)
        .into_iter()
        .map(local_square_class_hyperfield)
        .collect();
    for q in [3, 5, 7, 9, 25, 27] {
        quadratic.push(finite_field_quadratic_hyperfield(q).unwrap());
    }
    for h in &quadratic {
        for a in h.nonzero() {
            for b in h.nonzero() {
                assert!(h.sum_contains(a, b, a) && h.sum_contains(a, b, b));
            }
        }
    }
}

#[test]
fn local_tables_have_expected_sizes() {
    assert_eq!(local_square_class_hyperfield(Place::Finite(2)).len(), 9);
    for p in odd_primes_to(50) {
        let h = local_square_class_hyperfield(Place::Finite(p));
        assert_eq!(h.len(), 5);
        assert!(verify_axioms(&h).is_ok());
    }
    let two = local_square_class_hyperfield(Place::Finite(2));
    assert!(two.sum_contains(1, 1, two.index_of("5").unwrap()));
    let three = local_square_class_hyperfield(Place::Finite(3));
    let u = three.index_of("2").unwrap();
    for p_class in ["3", "6"] {
        assert!(three.sum_contains(1, u, three.index_of(p_class).unwrap()));
    }
}

#[test]
fn residue_embeddings_are_group_extensions() {
    for p in odd_primes_to(50) {
        let e = residue_embedding(p).unwrap();
        assert!(is_group_extension(&e.morphism()).unwrap(), "p = {p}");
        let outside: Vec<i64> = e
            .outside_image()
            .into_iter()
            .map(|i| e.target.label(i).parse().unwrap())
            .collect();
        assert_eq!(outside.len(), 2);
        assert!(
            outside.iter().all(|&r| r % p as i64 == 0),
            "p = {p}: {outside:?}"
        );
    }
    let e3 = residue_embedding(3).unwrap();
    assert_eq!(e3.target.label(e3.map[2]), "2");
    let e5 = residue_embedding(5).unwrap();
    assert_eq!(e5.source.neg(1), 1);
    assert!(residue_embedding(2).is_err());
}

#[test]
fn finite_field_witt_classes_over_prime_powers() {
    let qs: Vec<u64> = (3..=97u64)
        .filter(|&q| q % 2 == 1 && witt_core::arith::factor(q).len() == 1)
        .collect();
    let tables: Vec<(u64, FiniteHyperfield)> = qs
        .iter()
        .map(|&q| (q, finite_field_quadratic_hyperfield(q).unwrap()))
        .collect();
    for (q, h) in &tables {
        for (r, k) in &tables {
            let found = !find_isomorphisms(h, k, DEFAULT_ISOMORPHISM_BOUND)
                .unwrap()
                .is_empty();
            assert_eq!(found, q % 4 == r % 4, "q = {q}, q' = {r}");
        }
    }
}

#[test]
fn local_representation_matches_brute_force() {
    for p in primes_up_to(50) {
        let reps = canonical_reps(p).unwrap();
        for &a in &reps {
            for &b in &reps {
                for &c in &reps {
                    let formula =
                        represents(&rat(a), &rat(b), &rat(c), Scope::Local(Place::Finite(p)))
                            .unwrap();
                    let brute = brute_force_represents(a, b, c, p).unwrap();
                    assert_eq!(formula, brute, "p = {p}: {c} ∈ D<{a}, {b}>?");
                }
            }
        }
    }
}

#[test]
fn local_oracle_agrees_with_its_table() {
    for v in all_places_to(11) {
        let oracle = LocalQuadraticHyperfield::new(v);
        let table = local_square_class_hyperfield(v);
        let elems = oracle.elements();
        use witt_core::Hyperfield;
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                for (k, c) in elems.iter().enumerate() {
                    assert_eq!(oracle.sum_contains(a, b, c), table.sum_contains(i, j, k));
                }
            }
        }
    }
}

#[test]
fn rational_to_3_adic_is_a_quotient_morphism_on_samples() {
    let table = local_square_class_hyperfield(Place::Finite(3));
    let class = |n: i64| Some(SquareClassQ::from_int(n).unwrap());
    let map = |e: &Option<SquareClassQ>| match e {
        None => 0,
        Some(c) => {
            let local = padic_square_class(&c.to_rational(), 3).unwrap();
            table.index_of(&local.rep().to_string()).unwrap()
        }
    };
    let elements: Vec<_> = std::iter::once(None)
        .chain([1, -1, 2, -2, 3, -3, 6, -6].map(class))
        .collect();
    // classes that are 3-adic squares
    let kernel: Vec<_> = [
        1, -2, 7, 10, 13, -5, -11, 19, 22, -14, 31, 34, -17, 37, -23, -26,
    ]
    .map(class)
    .to_vec();
    assert!(kernel.iter().all(|k| map(k) == 1));
    assert!(is_quotient_morphism_sampled(
        &RationalQuadraticHyperfield,
        &table,
        map,
        &elements,
        &kernel
    ));
}

#[test]
fn two_squares_matches_global_representation() {
    for d in (1..=500i64).filter(|&d| is_squarefree(d as u64)) {
        assert_eq!(
            is_sum_two_squares(d).unwrap(),
            represents(&rat(1), &rat(1), &rat(d), Scope::Global).unwrap(),
            "d = {d}"
        );
    }
}

#[test]
fn parametrization_identity_for_split_conics() {
    let vals = squarefree_in(30);
    for &a in &vals {
        for &b in &vals {
            if !splits(&rat(a), &rat(b)).unwrap() {
                continue;
            }
            let bound = holzer_bound(&rat(a), &rat(b)).unwrap() as i64;
            let p0 = find_rational_point(&rat(a), &rat(b), bound)
                .unwrap()
                .unwrap();
            let par = parametrize(&rat(a), &rat(b), &p0).unwrap();
            assert!(par.identity_holds());
            match par.base_parameter() {
                Some(z0) => assert_eq!(par.eval(&z0).unwrap(), p0),
                // the chart reaches (p, −q) as z → ∞
                None => assert!(num_traits::Zero::is_zero(&p0.y)),
            }
        }
    }
}

fn nonzero_small() -> impl Strategy<Value = i64> {
    prop_oneof![-60i64..=-1, 1i64..=60]
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (nonzero_small(), 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Infinite),
        prop::sample::select(primes_up_to(31)).prop_map(Place::Finite)
    ]
}

proptest! {
    #[test]
    fn hilbert_is_bimultiplicative(a in nonzero_small(), b in nonzero_small(), c in nonzero_small(), v in place()) {
        let h = |x: i64, y: i64| hilbert_symbol(&rat(x), &rat(y), v).unwrap();
        prop_assert_eq!(h(a, b * c), h(a, b) * h(a, c));
        prop_assert_eq!(h(a, b), h(b, a));
    }

    #[test]
    fn hilbert_is_square_class_invariant(a in nonzero_rational(), b in nonzero_rational(), s in nonzero_rational(), t in nonzero_rational(), v in place()) {
        let scaled_a = &a * &s * &s;
        let scaled_b = &b * &t * &t;
        prop_assert_eq!(
            hilbert_symbol(&a, &b, v).unwrap(),
            hilbert_symbol(&scaled_a, &scaled_b, v).unwrap()
        );
    }

    #[test]
    fn conic_isomorphism_is_an_invariant_equivalence(
        a in nonzero_small(), b in nonzero_small(), c in nonzero_small(), d in nonzero_small(),
        s in 1i64..6, t in 1i64..6,
    ) {
        let iso = |a: i64, b: i64, c: i64, d: i64| conic_isomorphic(&rat(a), &rat(b), &rat(c), &rat(d)).unwrap();
        prop_assert!(iso(a, b, a, b));
        prop_assert_eq!(iso(a, b, c, d), iso(c, d, a, b));
        prop_assert!(iso(a, b, b, a));
        prop_assert_eq!(iso(a, b, c, d), iso(a * s * s, b * t * t, c, d));
        // (a, b) = (a, −ab)
        prop_assert!(iso(a, b, a, -a * b));
    }

    #[test]
    fn quaternions_splitting_over_a_conic(r in nonzero_small(), s in nonzero_small(), a in nonzero_small(), b in nonzero_small(), k in 1i64..5) {
        let q = |r: i64, s: i64, a: i64, b: i64| quaternion_splits_over_conic(&rat(r), &rat(s), &rat(a), &rat(b)).unwrap();
        prop_assert!(q(1, s, a, b));
        prop_assert!(q(a, b, a, b));
        prop_assert_eq!(q(r, s, a, b), q(r * k * k, s, a, b * k * k));
    }

    #[test]
    fn certificates_verify_and_respect_isomorphism(a in nonzero_small(), b in nonzero_small(), c in nonzero_small(), d in nonzero_small()) {
        let (a, b, c, d) = (rat(a), rat(b), rat(c), rat(d));
        let cert = witt_distinguish(&a, &b, &c, &d).unwrap();
        prop_assert!(verify_certificate(&cert, &a, &b, &c, &d).unwrap());
        if conic_isomorphic(&a, &b, &c, &d).unwrap() {
            prop_assert!(cert.is_indistinguishable());
        }
    }
}
