//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use witt_core::arith::{is_squarefree, primes_up_to, rat};
use witt_core::conics::{
    find_rational_point, holzer_bound, splits, verify_certificate, witness_set, witt_distinguish,
};
use witt_core::hyperfield::{
    find_isomorphisms, is_group_extension, prime, quotient, verify_axioms, FiniteHyperfield,
    SubgroupSelection, DEFAULT_ISOMORPHISM_BOUND,
};
use witt_core::localglobal::{
    finite_field_hyperfield, finite_field_quadratic_hyperfield, local_square_class_hyperfield,
    local_symbols, quaternion_ramification, represents, residue_embedding, Place, Scope,
};
use witt_core::quadfields::{
    class_group_2rank, distinct_2rank_family, imaginary_class_group_oracle,
    rational_function_field_inequiv, REAL_QUADRATIC_TABLE,
};

/// Outcome of one criterion: pass flag plus a one-line summary.
type Outcome = (bool, String);

fn squarefree_within(lim: i64) -> Vec<i64> {
    (-lim..=lim)
        .filter(|&n| n != 0 && is_squarefree(n.unsigned_abs()))
        .collect()
}

fn odd_primes_to(n: u64) -> Vec<u64> {
    primes_up_to(n).into_iter().filter(|&p| p > 2).collect()
}

fn counting_theorem() -> Outcome {
    let w = witness_set().expect("witness construction");
    let n = w.fields.len();
    let mut certified = 0;
    let mut pairs = 0;
    for i in 0..n {
        for j in i + 1..n {
            pairs += 1;
            let c = w.certificate(i, j).unwrap();
            let (k, l) = (&w.fields[i], &w.fields[j]);
            let ok = !c.is_indistinguishable()
                && verify_certificate(
                    c,
                    &k.a.to_rational(),
                    &k.b.to_rational(),
                    &l.a.to_rational(),
                    &l.b.to_rational(),
                )
                .unwrap();
            certified += usize::from(ok);
        }
    }
    let fields: Vec<String> = w.fields.iter().map(|f| f.to_string()).collect();
    (
        n >= 4 && certified == pairs && pairs == n * (n - 1) / 2,
        format!(
            "{n} fields [{}], {certified}/{pairs} pairs certified",
            fields.join(", ")
        ),
    )
}

fn reciprocity_sweep() -> Outcome {
    let vals = squarefree_within(100);
    let mut bad = Vec::new();
    for &a in &vals {
        for &b in &vals {
            let symbols = local_symbols(&rat(a), &rat(b)).unwrap();
            let minus = symbols.iter().filter(|(_, s)| *s == -1).count();
            let product: i8 = symbols.iter().map(|(_, s)| s).product();
            if minus % 2 != 0 || product != 1 {
                bad.push((a, b));
            }
        }
    }
    (
        bad.is_empty(),
        format!(
            "{} pairs, {} violations {:?}",
            vals.len() * vals.len(),
            bad.len(),
            &bad[..bad.len().min(5)]
        ),
    )
}

fn point_search_agreement() -> Outcome {
    let vals = squarefree_within(30);
    let mut disagree = Vec::new();
    for &a in &vals {
        for &b in &vals {
            let (ra, rb) = (rat(a), rat(b));
            let split = splits(&ra, &rb).unwrap();
            let bound = holzer_bound(&ra, &rb).unwrap() as i64;
            let point = find_rational_point(&ra, &rb, bound).unwrap();
            let global = represents(&ra, &rb, &rat(1), Scope::Global).unwrap();
            if split != point.is_some() || split != global {
                disagree.push((a, b));
            }
        }
    }
    let total = vals.len() * vals.len();
    (
        disagree.is_empty(),
        format!(
            "{}/{total} agree, disagreements {:?}",
            total - disagree.len(),
            &disagree[..disagree.len().min(5)]
        ),
    )
}

fn axiom_suite() -> Outcome {
    let mut inputs: Vec<(String, FiniteHyperfield)> = Vec::new();
    for q in odd_primes_to(97) {
        inputs.push((
            format!("Q(F_{q})"),
            finite_field_quadratic_hyperfield(q).unwrap(),
        ));
    }
    inputs.push((
        "Q(R)".into(),
        local_square_class_hyperfield(Place::Infinite),
    ));
    for p in primes_up_to(50) {
        inputs.push((
            format!("Q(Q_{p})"),
            local_square_class_hyperfield(Place::Finite(p)),
        ));
    }
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, h) in &inputs {
        checked += 1;
        if !verify_axioms(h).is_ok() {
            failures.push(name.clone());
        }
        for g in h.nonzero() {
            let t = SubgroupSelection::generated(h, &[g]).unwrap();
            let q = quotient(h, &t).unwrap();
            let p = prime(&q);
            checked += 2;
            if !verify_axioms(&q).is_ok() || !verify_axioms(&p).is_ok() {
                failures.push(format!("{name} / <{}>", h.label(g)));
            }
        }
    }
    // fields as hyperfields, their square-class quotients and primes
    for q in odd_primes_to(31) {
        let f = finite_field_hyperfield(q).unwrap();
        let squares = SubgroupSelection::new(&f, f.nonzero().map(|x| f.mul(x, x))).unwrap();
        let quo = quotient(&f, &squares).unwrap();
        checked += 3;
        for (label, t) in [("F", &f), ("F/F*2", &quo), ("(F/F*2)'", &prime(&quo))] {
            if !verify_axioms(t).is_ok() {
                failures.push(format!("{label} q={q}"));
            }
        }
    }
    (
        failures.is_empty(),
        format!("{checked} tables verified, failures {failures:?}"),
    )
}

fn group_extensions() -> Outcome {
    let mut failures = Vec::new();
    let primes = odd_primes_to(50);
    for &p in &primes {
        let e = residue_embedding(p).unwrap();
        let t = &e.target;
        let outside = e.outside_image();
        let odd_valuation = t
            .nonzero()
            .filter(|&x| t.label(x).parse::<i64>().unwrap() % p as i64 == 0)
            .collect::<Vec<_>>();
        let rigid = outside
            .iter()
            .all(|&x| t.add(t.one(), x).iter().all(|&z| z == t.one() || z == x));
        if !is_group_extension(&e.morphism()).unwrap() || outside != odd_valuation || !rigid {
            failures.push(p);
        }
    }
    (
        failures.is_empty(),
        format!("{} primes, failures {failures:?}", primes.len()),
    )
}

fn imaginary_branch() -> Outcome {
    let ds: Vec<i64> = (-200..=-2)
        .filter(|&d: &i64| is_squarefree(d.unsigned_abs()))
        .collect();
    let bad: Vec<i64> = ds
        .iter()
        .copied()
        .filter(|&d| {
            class_group_2rank(d).unwrap() != imaginary_class_group_oracle(d).unwrap().two_rank
        })
        .collect();
    (
        bad.is_empty(),
        format!("{} discriminants, mismatches {bad:?}", ds.len()),
    )
}

fn real_branch() -> Outcome {
    let mut bad = Vec::new();
    let mut narrow = Vec::new();
    for e in REAL_QUADRATIC_TABLE {
        if class_group_2rank(e.d).unwrap() != e.two_rank {
            bad.push(e.d);
        }
        if e.narrow_differs() {
            narrow.push(format!(
                "{} (wide {}, narrow {})",
                e.d, e.two_rank, e.narrow_two_rank
            ));
        }
    }
    (
        bad.is_empty(),
        format!(
            "{} fields, mismatches {bad:?}; narrow 2-rank differs for: {}",
            REAL_QUADRATIC_TABLE.len(),
            narrow.join(", ")
        ),
    )
}

fn infinitely_many() -> Outcome {
    let fam = distinct_2rank_family(5).unwrap();
    let ranks: Vec<u32> = fam.iter().map(|&d| class_group_2rank(d).unwrap()).collect();
    let all_pairs = fam.iter().enumerate().all(|(i, &x)| {
        fam[i + 1..]
            .iter()
            .all(|&y| rational_function_field_inequiv(x, y).unwrap())
    });
    (
        ranks == [0, 1, 2, 3, 4] && all_pairs,
        format!("d = {fam:?}, 2-ranks {ranks:?}, all pairs certified: {all_pairs}"),
    )
}

fn soundness() -> Outcome {
    let vals = squarefree_within(10);
    let fields: Vec<(i64, i64, _)> = vals
        .iter()
        .flat_map(|&a| vals.iter().map(move |&b| (a, b)))
        .map(|(a, b)| (a, b, quaternion_ramification(&rat(a), &rat(b)).unwrap()))
        .collect();
    let mut violations = Vec::new();
    let mut checked = 0;
    for (a, b, ram1) in &fields {
        for (c, d, ram2) in &fields {
            if ram1 != ram2 {
                continue;
            }
            checked += 1;
            let cert = witt_distinguish(&rat(*a), &rat(*b), &rat(*c), &rat(*d)).unwrap();
            if !cert.is_indistinguishable() {
                violations.push((*a, *b, *c, *d));
            }
        }
    }
    (
        violations.is_empty(),
        format!(
            "{checked} isomorphic pairs, {} violations",
            violations.len()
        ),
    )
}

fn finite_field_classes() -> Outcome {
    let qs = odd_primes_to(97);
    let tables: Vec<_> = qs
        .iter()
        .map(|&q| (q, finite_field_quadratic_hyperfield(q).unwrap()))
        .collect();
    let mut bad = Vec::new();
    for (q, h) in &tables {
        for (r, k) in &tables {
            let iso = !find_isomorphisms(h, k, DEFAULT_ISOMORPHISM_BOUND)
                .unwrap()
                .is_empty();
            if iso != (q % 4 == r % 4) {
                bad.push((*q, *r));
            }
        }
    }
    (
        bad.is_empty(),
        format!("{} pairs, mismatches {bad:?}", tables.len() * tables.len()),
    )
}

fn main() {
    let criteria: [(&str, Option<u64>, fn() -> Outcome); 10] = [
        (
            "counting theorem over Q: >= 4 pairwise certified fields",
            Some(5),
            counting_theorem,
        ),
        (
            "Hilbert reciprocity, squarefree |a|,|b| <= 100",
            Some(30),
            reciprocity_sweep,
        ),
        (
            "splitting vs bounded point search, |a|,|b| <= 30",
            Some(60),
            point_search_agreement,
        ),
        (
            "hyperfield axioms on Q(F_q), Q(R), Q(Q_p), quotients, primes",
            Some(60),
            axiom_suite,
        ),
        (
            "residue embeddings are group extensions, p <= 50",
            Some(10),
            group_extensions,
        ),
        (
            "class-group 2-rank, imaginary branch, -200 <= d <= -2",
            Some(30),
            imaginary_branch,
        ),
        (
            "class-group 2-rank, real validation table",
            None,
            real_branch,
        ),
        (
            "five fields with 2-ranks 0..4, pairwise inequivalent",
            Some(5),
            infinitely_many,
        ),
        (
            "no certificate separates isomorphic conic fields, |.| <= 10",
            None,
            soundness,
        ),
        (
            "Q(F_q) ~ Q(F_q') iff q = q' mod 4, odd primes <= 97",
            Some(10),
            finite_field_classes,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok((ok, detail)) => (ok, detail),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        let in_time = budget.is_none_or(|s| elapsed <= Duration::from_secs(s));
        let pass = ok && in_time;
        failed += usize::from(!pass);
        let budget_note = budget.map_or(String::new(), |s| format!(" (budget {s} s)"));
        println!(
            "acceptance {:>2} {}: {} [{:.2?}{budget_note}] {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            elapsed,
            detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
