//! Factorisation invariants: the witness machinery is sound and complete
//! against the definition checker, witness terms recursively carry
//! core-factorisations, and the permutability implications hold.

use std::sync::Arc;

use corefact::factcheck::{
    chief_witness, inner_factorisation, make_factorisation, permutability, verify_witness,
    Factorisation, DEFAULT_SUBGROUP_CAP,
};
use corefact::perm::{Group, Perm};
use corefact::structure::all_normals;

fn group(gens: &[&str], degree: usize) -> Arc<Group> {
    let parsed: Vec<Perm> = gens.iter().map(|s| Perm::parse(s, degree).unwrap()).collect();
    Group::generate(&parsed, degree, 20000).unwrap()
}

fn sub(g: &Arc<Group>, gens: &[&str]) -> Arc<Group> {
    let parsed: Vec<Perm> = gens
        .iter()
        .map(|s| Perm::parse(s, g.degree()).unwrap())
        .collect();
    Group::subgroup_generated(g, &parsed).unwrap()
}

/// The factorisations the shipped catalog declares, positive and negative.
fn sample_factorisations() -> Vec<(&'static str, Factorisation)> {
    let mut out = Vec::new();

    let c6 = group(&["(1,2,3,4,5,6)"], 6);
    out.push((
        "c6=c2*c3",
        make_factorisation(&c6, &sub(&c6, &["(1,4)(2,5)(3,6)"]), &sub(&c6, &["(1,3,5)(2,4,6)"]))
            .unwrap(),
    ));

    let s3 = group(&["(1,2)", "(1,2,3)"], 3);
    out.push((
        "s3=c2*c3",
        make_factorisation(&s3, &sub(&s3, &["(1,2)"]), &sub(&s3, &["(1,2,3)"])).unwrap(),
    ));
    out.push(("s3 trivial", make_factorisation(&s3, &s3, &s3).unwrap()));

    let d8 = group(&["(1,2,3,4)", "(1,3)"], 4);
    out.push((
        "d8=c2*c4",
        make_factorisation(&d8, &sub(&d8, &["(1,3)"]), &sub(&d8, &["(1,2,3,4)"])).unwrap(),
    ));

    let f20 = group(&["(1,2,3,4,5)", "(2,3,5,4)"], 5);
    out.push((
        "f20=c5*c4",
        make_factorisation(&f20, &sub(&f20, &["(1,2,3,4,5)"]), &sub(&f20, &["(2,3,5,4)"]))
            .unwrap(),
    ));

    let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
    out.push((
        "s4=c4*s3 (non-core)",
        make_factorisation(&s4, &sub(&s4, &["(1,3,2,4)"]), &sub(&s4, &["(2,3,4)", "(3,4)"]))
            .unwrap(),
    ));

    let g = group(&["(1,2)", "(1,2,3,4)", "(5,6)"], 6);
    out.push((
        "s4xc2=d8*d12",
        make_factorisation(
            &g,
            &sub(&g, &["(1,2)(5,6)", "(3,4)(5,6)", "(1,3)(2,4)(5,6)"]),
            &sub(&g, &["(2,3,4)", "(3,4)", "(5,6)"]),
        )
        .unwrap(),
    ));

    let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
    out.push((
        "a5=a4*c5 (non-core)",
        make_factorisation(
            &a5,
            &sub(&a5, &["(1,2,3)", "(1,2)(3,4)"]),
            &sub(&a5, &["(1,2,3,4,5)"]),
        )
        .unwrap(),
    ));
    out.push(("a5 trivial", make_factorisation(&a5, &a5, &a5).unwrap()));

    out
}

#[test]
fn definition_checker_matches_witness_search() {
    for (name, f) in sample_factorisations() {
        let witness = chief_witness(&f);
        assert_eq!(
            f.is_core(),
            witness.is_some(),
            "{name}: definition and witness disagree"
        );
        if let Some(w) = &witness {
            verify_witness(&f, w).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!w.backtracked, "{name}: greedy search backtracked");
            assert_eq!(w.alternatives.len(), w.cover_labels.len());
            assert!(w.alternatives.iter().all(|&a| a >= 1));
        }
    }
}

#[test]
fn witness_terms_carry_core_factorisations_recursively() {
    for (name, f) in sample_factorisations() {
        let Some(witness) = chief_witness(&f) else {
            continue;
        };
        for term in witness.series.terms.iter().skip(1) {
            let inner = inner_factorisation(&f, term).unwrap();
            assert!(
                inner.is_core(),
                "{name}: witness term of order {} is not an inner core-factorisation",
                term.order()
            );
        }
    }
}

#[test]
fn quotient_inheritance_over_all_core_factorisations() {
    for (name, f) in sample_factorisations() {
        if !f.is_core() {
            continue;
        }
        for m in all_normals(f.group()) {
            if m.order() == f.group().order() {
                continue;
            }
            let induced = corefact::factcheck::induced_factorisation(&f, &m).unwrap();
            assert!(
                induced.is_core(),
                "{name}: quotient by a normal subgroup of order {} loses the property",
                m.order()
            );
        }
    }
}

#[test]
fn permutability_implications() {
    for (name, f) in sample_factorisations() {
        if f.group().order() > 24 {
            continue; // keep the subgroup sweeps cheap
        }
        let report = permutability(&f, DEFAULT_SUBGROUP_CAP).unwrap();
        if report.total {
            assert!(report.mutual, "{name}: total but not mutual");
            assert!(report.tcc, "{name}: total but not tcc");
        }
        if report.mutual || report.tcc {
            assert!(
                f.is_core(),
                "{name}: permutable factors must form a core-factorisation"
            );
        }
    }
}
