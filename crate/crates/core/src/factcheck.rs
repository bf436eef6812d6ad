//! Validated factorisations `G = AB`, the core-factorisation decision
//! procedure, chief-series witnesses, prefactorised subgroups, and the
//! mutual / total / tcc permutability checks.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{coset_action_quotient, Group, Perm};
use crate::structure::{all_normals, intersection, join, minimal_normals, set_product, NormalSeries};

/// Default ceiling on factor order for subgroup enumeration.
pub const DEFAULT_SUBGROUP_CAP: usize = 512;

/// A validated triple `(G, A, B)` with `G = AB`.
#[derive(Debug)]
pub struct Factorisation {
    group: Arc<Group>,
    a: Arc<Group>,
    b: Arc<Group>,
    core_verdict: OnceLock<CoreVerdict>,
}

/// Outcome of the core-factorisation definition check.
#[derive(Debug, Clone)]
pub struct CoreVerdict {
    pub holds: bool,
    /// The first (canonical) proper normal subgroup violating the condition.
    pub failing_k: Option<Arc<Group>>,
}

/// Which factor covers a chief factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverLabel {
    A,
    B,
}

impl std::fmt::Display for CoverLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CoverLabel::A => "A",
            CoverLabel::B => "B",
        })
    }
}

/// A chief series of `G` in which every factor is covered by the labelled
/// factor; its terms are prefactorised.
pub struct CoreWitness {
    pub series: NormalSeries,
    /// One label per factor of the series.
    pub cover_labels: Vec<CoverLabel>,
    /// Number of covered minimal normal subgroups available at each stage
    /// (the greedy choice takes the canonical least).
    pub alternatives: Vec<usize>,
    /// Whether the search ever had to undo a greedy choice. Quotient
    /// inheritance implies this stays false on positive instances.
    pub backtracked: bool,
}

/// Validates `G = AB` via the order identity `|A||B| = |G||A∩B|`.
pub fn make_factorisation(g: &Arc<Group>, a: &Arc<Group>, b: &Arc<Group>) -> Result<Factorisation> {
    if !a.is_subgroup_of(g) || !b.is_subgroup_of(g) {
        return Err(Error::NotASubgroup);
    }
    let a = Group::subgroup_from_elements(g, a.elements().to_vec());
    let b = Group::subgroup_from_elements(g, b.elements().to_vec());
    let meet = intersection(g, &a, &b);
    let product = a.order() * b.order();
    let required = g.order() * meet.order();
    if product != required {
        return Err(Error::NotAFactorisation { product, required });
    }
    Ok(Factorisation {
        group: Arc::clone(g),
        a,
        b,
        core_verdict: OnceLock::new(),
    })
}

impl Factorisation {
    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn a(&self) -> &Arc<Group> {
        &self.a
    }

    pub fn b(&self) -> &Arc<Group> {
        &self.b
    }

    /// `G = A = B`.
    pub fn is_trivial_factorisation(&self) -> bool {
        self.a.order() == self.group.order() && self.b.order() == self.group.order()
    }

    /// Sorted union of the element sets of the two factors.
    pub fn factor_union(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = self.a.elements().to_vec();
        out.extend(self.b.elements().iter().cloned());
        out.sort();
        out.dedup();
        out
    }

    /// Cached core-factorisation verdict.
    pub fn core_verdict(&self) -> CoreVerdict {
        self.core_verdict
            .get_or_init(|| is_core_factorisation(self))
            .clone()
    }

    pub fn is_core(&self) -> bool {
        self.core_verdict().holds
    }
}

/// Direct definition check: for every proper normal `K`, the image of `A`
/// or of `B` in `G/K` must contain a nontrivial normal subgroup of `G/K` —
/// equivalently `core(G, AK) > K` or `core(G, BK) > K`.
pub fn is_core_factorisation(f: &Factorisation) -> CoreVerdict {
    let g = &f.group;
    for k in all_normals(g) {
        if k.order() == g.order() {
            continue;
        }
        let mut covered = false;
        for factor in [&f.a, &f.b] {
            // K is normal, so the set product A·K is already a subgroup.
            let product = Group::subgroup_from_elements(g, set_product(factor, &k));
            let core = crate::structure::core(g, &product).expect("product is a subgroup");
            if core.order() > k.order() {
                covered = true;
                break;
            }
        }
        if !covered {
            return CoreVerdict {
                holds: false,
                failing_k: Some(k),
            };
        }
    }
    CoreVerdict {
        holds: true,
        failing_k: None,
    }
}

/// Greedy ascent through covered minimal normal subgroups of the successive
/// quotients. Completeness of the greedy choice follows from quotient
/// inheritance, so backtracking never fires on positive instances; it is
/// still implemented, and its activation is logged as a reportable
/// inconsistency.
pub fn chief_witness(f: &Factorisation) -> Option<CoreWitness> {
    let g = &f.group;
    let trivial = Group::subgroup_from_elements(g, vec![g.identity()]);
    let mut terms = vec![trivial];
    let mut labels = Vec::new();
    let mut alternatives = Vec::new();
    let mut backtracked = false;
    if !search_witness(f, &mut terms, &mut labels, &mut alternatives, &mut backtracked) {
        return None;
    }
    if backtracked {
        log::warn!(
            "chief witness search backtracked on a positive instance; \
             this contradicts quotient inheritance and indicates a bug"
        );
    }
    let factor_orders = terms
        .windows(2)
        .map(|w| w[1].order() / w[0].order())
        .collect();
    Some(CoreWitness {
        series: NormalSeries {
            terms,
            factor_orders,
        },
        cover_labels: labels,
        alternatives,
        backtracked,
    })
}

fn search_witness(
    f: &Factorisation,
    terms: &mut Vec<Arc<Group>>,
    labels: &mut Vec<CoverLabel>,
    alternatives: &mut Vec<usize>,
    backtracked: &mut bool,
) -> bool {
    let g = &f.group;
    let current = terms.last().unwrap();
    if current.order() == g.order() {
        return true;
    }
    let q = coset_action_quotient(g, current).expect("witness terms are normal");
    let a_image = q.project_subgroup(&f.a).expect("subgroup of g");
    let b_image = q.project_subgroup(&f.b).expect("subgroup of g");
    let mut minimals = minimal_normals(&q.quotient).expect("proper quotient is nontrivial");
    // Canonical order: least nontrivial element first.
    minimals.sort_by(|x, y| x.elements()[1].cmp(&y.elements()[1]));
    let covered: Vec<(Arc<Group>, CoverLabel)> = minimals
        .into_iter()
        .filter_map(|m| {
            if m.is_subgroup_of(&a_image) {
                Some((m, CoverLabel::A))
            } else if m.is_subgroup_of(&b_image) {
                Some((m, CoverLabel::B))
            } else {
                None
            }
        })
        .collect();
    alternatives.push(covered.len());
    for (m, label) in covered {
        let pulled = q.preimage(&m).expect("subgroup of quotient");
        terms.push(pulled);
        labels.push(label);
        if search_witness(f, terms, labels, alternatives, backtracked) {
            return true;
        }
        *backtracked = true;
        terms.pop();
        labels.pop();
    }
    alternatives.pop();
    false
}

/// `S = (S∩A)(S∩B)`, decided by the order identity.
pub fn is_prefactorised(f: &Factorisation, s: &Arc<Group>) -> Result<bool> {
    if !s.is_subgroup_of(&f.group) {
        return Err(Error::NotASubgroup);
    }
    let sa = intersection(&f.group, s, &f.a);
    let sb = intersection(&f.group, s, &f.b);
    let sab = intersection(&f.group, &sa, &f.b);
    Ok(sa.order() * sb.order() == s.order() * sab.order())
}

/// Structural validation of a witness: strict ascending normal series, the
/// cover condition `N_i <= X·N_{i-1}` for the labelled factor, and
/// prefactorised terms.
pub fn verify_witness(f: &Factorisation, witness: &CoreWitness) -> Result<()> {
    witness.series.verify_in(&f.group)?;
    if witness.cover_labels.len() + 1 != witness.series.terms.len() {
        return Err(Error::Internal("label count must match factor count".into()));
    }
    for i in 1..witness.series.terms.len() {
        let term = &witness.series.terms[i];
        let prev = &witness.series.terms[i - 1];
        let factor = match witness.cover_labels[i - 1] {
            CoverLabel::A => &f.a,
            CoverLabel::B => &f.b,
        };
        let product = set_product(factor, prev);
        if !term.elements().iter().all(|x| product.binary_search(x).is_ok()) {
            return Err(Error::Internal(format!("cover condition fails at term {i}")));
        }
        if !is_prefactorised(f, term)? {
            return Err(Error::Internal(format!("term {i} is not prefactorised")));
        }
    }
    Ok(())
}

/// The factorisation of `G/M` induced by the images of the factors.
pub fn induced_factorisation(f: &Factorisation, m: &Arc<Group>) -> Result<Factorisation> {
    let q = coset_action_quotient(&f.group, m)?;
    let a_image = q.project_subgroup(&f.a)?;
    let b_image = q.project_subgroup(&f.b)?;
    make_factorisation(&q.quotient, &a_image, &b_image)
}

/// The inner factorisation of a prefactorised subgroup: `S = (S∩A)(S∩B)`.
pub fn inner_factorisation(f: &Factorisation, s: &Arc<Group>) -> Result<Factorisation> {
    let s_rooted = Group::generate(s.generators(), s.degree(), s.order().max(1))?;
    let sa = intersection(&s_rooted, s, &f.a);
    let sb = intersection(&s_rooted, s, &f.b);
    make_factorisation(&s_rooted, &sa, &sb)
}

/// Every subgroup of `g`, by join-closure of the cyclic subgroups.
pub fn all_subgroups(g: &Arc<Group>, cap: usize) -> Result<Vec<Arc<Group>>> {
    if g.order() > cap {
        return Err(Error::SubgroupCapExceeded {
            order: g.order(),
            cap,
        });
    }
    let mut by_elements: BTreeMap<Vec<Perm>, Arc<Group>> = BTreeMap::new();
    let trivial = Group::subgroup_from_elements(g, vec![g.identity()]);
    by_elements.insert(trivial.elements().to_vec(), trivial);
    for x in g.elements() {
        let cyclic = Group::subgroup_generated(g, std::slice::from_ref(x)).expect("member");
        by_elements.entry(cyclic.elements().to_vec()).or_insert(cyclic);
    }
    loop {
        let current: Vec<Arc<Group>> = by_elements.values().cloned().collect();
        let before = current.len();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                if current[i].is_subgroup_of(&current[j]) || current[j].is_subgroup_of(&current[i])
                {
                    continue;
                }
                let joined = join(g, &current[i], &current[j]);
                by_elements.entry(joined.elements().to_vec()).or_insert(joined);
            }
        }
        if by_elements.len() == before {
            break;
        }
    }
    let mut out: Vec<Arc<Group>> = by_elements.into_values().collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// The three permutability relations between the factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutabilityReport {
    pub mutual: bool,
    pub total: bool,
    pub tcc: bool,
}

fn permute_as_sets(x: &Group, y: &Group) -> bool {
    set_product(x, y) == set_product(y, x)
}

/// Decides mutual, total and tcc permutability by exhaustive subgroup
/// enumeration (cap applies to the factor orders).
pub fn permutability(f: &Factorisation, cap: usize) -> Result<PermutabilityReport> {
    let subs_a = all_subgroups(&f.a, cap)?;
    let subs_b = all_subgroups(&f.b, cap)?;

    let mutual = subs_a.iter().all(|x| permute_as_sets(x, &f.b))
        && subs_b.iter().all(|y| permute_as_sets(&f.a, y));

    let total = subs_a
        .iter()
        .all(|x| subs_b.iter().all(|y| permute_as_sets(x, y)));

    let mut tcc = true;
    'pairs: for x in &subs_a {
        for y in &subs_b {
            let mut gens = x.generators().to_vec();
            gens.extend(y.generators().iter().cloned());
            let generated = Group::subgroup_generated(&f.group, &gens).expect("subgroups of g");
            let found = generated.elements().iter().any(|t| {
                let conj = Group::subgroup_from_elements(&f.group, y.conjugated_elements(t));
                permute_as_sets(x, &conj)
            });
            if !found {
                tcc = false;
                break 'pairs;
            }
        }
    }

    Ok(PermutabilityReport { mutual, total, tcc })
}

#[cfg(test)]
mod tests {
    use super::*;

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

    /// Sym(4) x C2 on six points with its dihedral and S3 x C2 factors.
    fn example_fixture() -> (Arc<Group>, Factorisation) {
        let g = group(&["(1,2)", "(1,2,3,4)", "(5,6)"], 6);
        assert_eq!(g.order(), 48);
        let a = sub(&g, &["(1,2)(5,6)", "(3,4)(5,6)", "(1,3)(2,4)(5,6)"]);
        let b = sub(&g, &["(2,3,4)", "(3,4)", "(5,6)"]);
        let f = make_factorisation(&g, &a, &b).unwrap();
        (g, f)
    }

    #[test]
    fn factorisation_validation() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let trivial_fact = make_factorisation(&s3, &s3, &s3).unwrap();
        assert!(trivial_fact.is_trivial_factorisation());

        let c2 = sub(&s3, &["(1,2)"]);
        let err = make_factorisation(&s3, &c2, &c2).unwrap_err();
        assert!(matches!(
            err,
            Error::NotAFactorisation {
                product: 4,
                required: 12
            }
        ));

        let (_, f) = example_fixture();
        assert_eq!(f.a().order(), 8);
        assert_eq!(f.b().order(), 12);
        let meet = intersection(f.group(), f.a(), f.b());
        assert_eq!(meet.order(), 2);
    }

    #[test]
    fn example_fixture_is_core() {
        let (_, f) = example_fixture();
        let verdict = f.core_verdict();
        assert!(verdict.holds);
        assert!(verdict.failing_k.is_none());

        let witness = chief_witness(&f).expect("core-factorisation has a witness");
        verify_witness(&f, &witness).unwrap();
        assert!(!witness.backtracked);
        // First term is the central factor of order 2, covered by B.
        assert_eq!(witness.series.terms[1].order(), 2);
        assert_eq!(witness.cover_labels[0], CoverLabel::B);
        assert!(witness.series.terms[1].contains(&Perm::parse("(5,6)", 6).unwrap()));
    }

    #[test]
    fn sym4_inner_factorisation_is_not_core() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let a = sub(&s4, &["(1,3,2,4)"]);
        let b = sub(&s4, &["(2,3,4)", "(3,4)"]);
        assert_eq!(a.order(), 4);
        assert_eq!(b.order(), 6);
        let f = make_factorisation(&s4, &a, &b).unwrap();
        let verdict = f.core_verdict();
        assert!(!verdict.holds);
        assert!(verdict.failing_k.unwrap().is_trivial());
        assert!(chief_witness(&f).is_none());
    }

    #[test]
    fn trivial_factorisation_is_core_with_witness() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let f = make_factorisation(&s4, &s4, &s4).unwrap();
        assert!(f.is_core());
        let witness = chief_witness(&f).unwrap();
        verify_witness(&f, &witness).unwrap();
        assert!(witness.cover_labels.iter().all(|&l| l == CoverLabel::A));
        assert_eq!(witness.series.factor_orders, vec![4, 3, 2]);
    }

    #[test]
    fn prefactorised_cases() {
        let (g, f) = example_fixture();
        assert!(is_prefactorised(&f, &g).unwrap());

        // N = Sym(4) inside the fixture.
        let n = sub(&g, &["(1,2)", "(1,2,3,4)"]);
        assert_eq!(n.order(), 24);
        assert!(is_prefactorised(&f, &n).unwrap());
        let na = intersection(&g, &n, f.a());
        let nb = intersection(&g, &n, f.b());
        assert_eq!(na.order(), 4);
        assert_eq!(nb.order(), 6);

        // A Sylow 3-subgroup meeting neither factor is not prefactorised.
        let c3 = sub(&g, &["(1,2,3)"]);
        assert!(!is_prefactorised(&f, &c3).unwrap());
    }

    #[test]
    fn inner_factorisation_of_sym4_fails_core() {
        let (g, f) = example_fixture();
        let n = sub(&g, &["(1,2)", "(1,2,3,4)"]);
        let inner = inner_factorisation(&f, &n).unwrap();
        assert_eq!(inner.a().order(), 4);
        assert_eq!(inner.b().order(), 6);
        let verdict = inner.core_verdict();
        assert!(!verdict.holds);
        assert!(verdict.failing_k.unwrap().is_trivial());
    }

    #[test]
    fn definition_matches_witness_existence() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        let a4_in_a5 = sub(&a5, &["(1,2,3)", "(1,2)(3,4)"]);
        let c5_in_a5 = sub(&a5, &["(1,2,3,4,5)"]);
        let facts = vec![
            make_factorisation(&s3, &sub(&s3, &["(1,2)"]), &sub(&s3, &["(1,2,3)"])).unwrap(),
            make_factorisation(&s3, &s3, &s3).unwrap(),
            make_factorisation(&a5, &a4_in_a5, &c5_in_a5).unwrap(),
            example_fixture().1,
        ];
        for f in &facts {
            let witness = chief_witness(f);
            assert_eq!(f.is_core(), witness.is_some());
            if let Some(w) = witness {
                verify_witness(f, &w).unwrap();
            }
        }
    }

    #[test]
    fn simple_group_noncore_factorisation() {
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        let a4 = sub(&a5, &["(1,2,3)", "(1,2)(3,4)"]);
        let c5 = sub(&a5, &["(1,2,3,4,5)"]);
        let f = make_factorisation(&a5, &a4, &c5).unwrap();
        assert!(!f.is_core());
        assert!(f.core_verdict().failing_k.unwrap().is_trivial());
    }

    #[test]
    fn permutability_cases() {
        let c6 = group(&["(1,2,3,4,5,6)"], 6);
        let a = sub(&c6, &["(1,4)(2,5)(3,6)"]);
        let b = sub(&c6, &["(1,3,5)(2,4,6)"]);
        let f = make_factorisation(&c6, &a, &b).unwrap();
        let report = permutability(&f, DEFAULT_SUBGROUP_CAP).unwrap();
        assert!(report.total && report.mutual && report.tcc);

        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let f = make_factorisation(&s3, &s3, &s3).unwrap();
        let report = permutability(&f, DEFAULT_SUBGROUP_CAP).unwrap();
        assert!(report.mutual);

        let (_, f) = example_fixture();
        let report = permutability(&f, DEFAULT_SUBGROUP_CAP).unwrap();
        assert!(!report.mutual);
        assert!(!report.tcc);
        assert!(!report.total);

        let err = permutability(&f, 4).unwrap_err();
        assert!(matches!(err, Error::SubgroupCapExceeded { .. }));
    }

    #[test]
    fn quotient_inheritance() {
        let (g, f) = example_fixture();
        assert!(f.is_core());
        for m in all_normals(&g) {
            if m.order() == g.order() {
                continue;
            }
            let induced = induced_factorisation(&f, &m).unwrap();
            assert!(induced.is_core(), "quotient by order {} fails", m.order());
        }
    }

    #[test]
    fn subgroup_enumeration_counts() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        assert_eq!(all_subgroups(&s3, 512).unwrap().len(), 6);
        let d8 = group(&["(1,2,3,4)", "(1,3)"], 4);
        assert_eq!(all_subgroups(&d8, 512).unwrap().len(), 10);
    }
}
