//! Structural invariants: the normal-subgroup lattice, minimal normality,
//! chief series verification, and the quotient machinery, exercised across
//! a spread of groups.

use std::sync::Arc;

use corefact::perm::{coset_action_quotient, is_normal_in, Group, Perm};
use corefact::structure::{
    all_normals, chief_series, intersection, join, minimal_normals, normal_closure,
};

fn group(gens: &[&str], degree: usize) -> Arc<Group> {
    let parsed: Vec<Perm> = gens.iter().map(|s| Perm::parse(s, degree).unwrap()).collect();
    Group::generate(&parsed, degree, 20000).unwrap()
}

fn sample_groups() -> Vec<(&'static str, Arc<Group>)> {
    vec![
        ("s3", group(&["(1,2)", "(1,2,3)"], 3)),
        ("d8", group(&["(1,2,3,4)", "(1,3)"], 4)),
        ("q8", group(&["(1,3,2,4)(5,8,6,7)", "(1,5,2,6)(3,7,4,8)"], 8)),
        ("a4", group(&["(1,2,3)", "(1,2)(3,4)"], 4)),
        ("d12", group(&["(1,2,3,4,5,6)", "(2,6)(3,5)"], 6)),
        ("f20", group(&["(1,2,3,4,5)", "(2,3,5,4)"], 5)),
        ("sl23", group(&["(1,3,2,6)(4,5,8,7)", "(3,4,5)(6,8,7)"], 8)),
        ("s4", group(&["(1,2)", "(1,2,3,4)"], 4)),
        ("s4xc2", group(&["(1,2)", "(1,2,3,4)", "(5,6)"], 6)),
        ("a5", group(&["(1,2,3,4,5)", "(1,2,3)"], 5)),
    ]
}

#[test]
fn normal_lattice_is_closed_and_normal() {
    for (name, g) in sample_groups() {
        let normals = all_normals(&g);
        for n in &normals {
            assert!(is_normal_in(n, &g), "{name}: lattice member not normal");
        }
        for (i, a) in normals.iter().enumerate() {
            for b in &normals[i + 1..] {
                let meet = intersection(&g, a, b);
                let joined = join(&g, a, b);
                assert!(
                    normals.iter().any(|n| n.as_ref() == meet.as_ref()),
                    "{name}: intersection escapes the lattice"
                );
                assert!(
                    normals.iter().any(|n| n.as_ref() == joined.as_ref()),
                    "{name}: join escapes the lattice"
                );
            }
        }
    }
}

#[test]
fn minimal_normals_are_characteristically_minimal() {
    for (name, g) in sample_groups() {
        let normals = all_normals(&g);
        for m in minimal_normals(&g).unwrap() {
            assert!(!m.is_trivial());
            for n in &normals {
                let strictly_between =
                    !n.is_trivial() && n.order() < m.order() && n.is_subgroup_of(&m);
                assert!(
                    !strictly_between,
                    "{name}: normal subgroup strictly inside a minimal normal one"
                );
            }
        }
    }
}

#[test]
fn minimal_normals_match_the_closure_enumeration() {
    // Independent route: inclusion-minimal members of the set of normal
    // closures of single nontrivial elements, deduplicated.
    for (name, g) in sample_groups() {
        let mut closures: Vec<Arc<Group>> = Vec::new();
        for x in g.elements() {
            if x.is_identity() {
                continue;
            }
            let ncl = normal_closure(&g, std::slice::from_ref(x)).unwrap();
            if !closures.iter().any(|c| c.as_ref() == ncl.as_ref()) {
                closures.push(ncl);
            }
        }
        let mut expected: Vec<&Arc<Group>> = closures
            .iter()
            .filter(|n| {
                !closures
                    .iter()
                    .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
            })
            .collect();
        expected.sort_by(|a, b| a.canonical_cmp(b));
        let mut actual = minimal_normals(&g).unwrap();
        actual.sort_by(|a, b| a.canonical_cmp(b));
        assert_eq!(expected.len(), actual.len(), "{name}");
        for (e, a) in expected.iter().zip(&actual) {
            assert_eq!(e.as_ref(), a.as_ref(), "{name}");
        }
    }
}

#[test]
fn chief_series_verify_everywhere() {
    for (name, g) in sample_groups() {
        let series = chief_series(&g);
        series
            .verify_chief_in(&g)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(
            series.factor_orders.iter().product::<usize>(),
            g.order(),
            "{name}: factors do not multiply to the order"
        );
    }
}

#[test]
fn coset_projection_is_a_homomorphism_with_kernel_n() {
    for (name, g) in sample_groups() {
        for n in all_normals(&g) {
            let q = coset_action_quotient(&g, &n).unwrap();
            assert_eq!(q.quotient.order() * n.order(), g.order(), "{name}");
            for x in g.generators() {
                for y in g.generators() {
                    let lhs = q.project(&x.compose(y)).unwrap();
                    let rhs = q.project(x).unwrap().compose(&q.project(y).unwrap());
                    assert_eq!(lhs, rhs, "{name}: projection not a homomorphism");
                }
            }
            let kernel_size = g
                .elements()
                .iter()
                .filter(|x| q.project(x).unwrap().is_identity())
                .count();
            assert_eq!(kernel_size, n.order(), "{name}: kernel differs from N");
        }
    }
}
