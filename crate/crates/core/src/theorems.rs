//! Executable registry of structural statements about vanishing elements in
//! factorised groups, and a harness that sweeps them over a catalog.
//!
//! Every statement is split into a hypothesis predicate and a conclusion
//! predicate. The statements are proved facts, so an instance with a true
//! hypothesis and a false conclusion is a bug oracle for the engine itself,
//! not mathematical news. The harness reports per-instance outcomes,
//! per-statement coverage (how often a hypothesis actually held, guarding
//! against vacuous sweeps) and the failure list.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::chartab::{has_p_defect_zero, vanishing_profile};
use crate::error::{Error, Result};
use crate::factcheck::{chief_witness, verify_witness, Factorisation};
use crate::perm::{classify_element, coset_action_quotient, index, is_normal_in, Group, Perm};
use crate::structure::{
    all_normals, cached_report, center, derived, fitting, frattini_of_pgroup,
    is_elementary_abelian, minimal_normals, normal_hall_nilpotent, sylow,
};

/// Statement scope: plain groups or validated factorisations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scope {
    Group,
    Factorisation,
}

/// Registry entry. Parameters (a prime, a prime set) are swept internally by
/// the evaluator, one outcome per parameter choice.
pub struct TheoremSpec {
    pub id: &'static str,
    pub scope: Scope,
    pub label: &'static str,
}

/// A catalog instance the harness can evaluate.
pub enum Instance {
    Group { name: String, group: Arc<Group> },
    Fact { name: String, fact: Arc<Factorisation> },
}

impl Instance {
    pub fn name(&self) -> &str {
        match self {
            Instance::Group { name, .. } => name,
            Instance::Fact { name, .. } => name,
        }
    }

    pub fn scope(&self) -> Scope {
        match self {
            Instance::Group { .. } => Scope::Group,
            Instance::Fact { .. } => Scope::Factorisation,
        }
    }
}

/// One named part of a conclusion, reported independently so a failure
/// pinpoints the violated clause.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubClause {
    pub name: String,
    pub holds: bool,
}

/// Per-theorem, per-instance, per-parameter verdict.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckOutcome {
    pub theorem: String,
    pub instance: String,
    /// Rendered parameter, e.g. `p=2` or `sigma={2,3}`; empty if none.
    pub params: String,
    pub hypothesis_holds: bool,
    /// Evaluated when the hypothesis holds (always, in audit mode).
    pub conclusion_holds: Option<bool>,
    pub subclauses: Vec<SubClause>,
    /// Wall-clock time; excluded from serialised reports so repeated runs
    /// stay byte-identical.
    #[serde(skip, default)]
    pub elapsed: Duration,
}

impl CheckOutcome {
    /// A confirmed hypothesis-true/conclusion-false pair.
    pub fn is_failure(&self) -> bool {
        self.hypothesis_holds && self.conclusion_holds == Some(false)
    }
}

/// Sweep result over a catalog.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HarnessReport {
    pub outcomes: Vec<CheckOutcome>,
    /// Per theorem id: number of outcomes whose hypothesis held.
    pub coverage: BTreeMap<String, usize>,
    /// Indices into `outcomes` of the failures.
    pub failures: Vec<usize>,
}

impl HarnessReport {
    pub fn has_failures(&self) -> bool {
        !self.failures.is_empty()
    }
}

/// The registry, in statement order.
pub fn registry() -> &'static [TheoremSpec] {
    const REGISTRY: &[TheoremSpec] = &[
        TheoremSpec {
            id: "L2.2",
            scope: Scope::Factorisation,
            label: "quotients of core-factorisations are core-factorisations",
        },
        TheoremSpec {
            id: "L2.4",
            scope: Scope::Factorisation,
            label: "definition verdict coincides with chief-witness existence",
        },
        TheoremSpec {
            id: "L3.1",
            scope: Scope::Group,
            label: "coprime abelian-over-minimal layers vanish outside the base",
        },
        TheoremSpec {
            id: "L3.2",
            scope: Scope::Group,
            label: "chief factors centralising an abelian minimal normal vanish off the base",
        },
        TheoremSpec {
            id: "L3.3",
            scope: Scope::Group,
            label: "p-defect-zero characters of normal subgroups force vanishing",
        },
        TheoremSpec {
            id: "P3.4",
            scope: Scope::Group,
            label: "nonabelian simple groups: p-defect zero or a vanishing p-element",
        },
        TheoremSpec {
            id: "P3.5",
            scope: Scope::Group,
            label: "nonabelian minimal normals contain vanishing p-elements",
        },
        TheoremSpec {
            id: "T3.6",
            scope: Scope::Factorisation,
            label: "no vanishing p-elements in the factors forces a normal Sylow p",
        },
        TheoremSpec {
            id: "C3.7",
            scope: Scope::Factorisation,
            label: "no vanishing sigma-elements forces a nilpotent normal Hall sigma-subgroup",
        },
        TheoremSpec {
            id: "C3.8",
            scope: Scope::Factorisation,
            label: "vanishing orders confined to two primes force solubility",
        },
        TheoremSpec {
            id: "P3.9",
            scope: Scope::Group,
            label: "supersoluble groups vanish outside the centre of the Fitting subgroup",
        },
        TheoremSpec {
            id: "C3.10",
            scope: Scope::Factorisation,
            label: "abelian iff no vanishing (prime power order) elements in the factors",
        },
        TheoremSpec {
            id: "L4.1",
            scope: Scope::Group,
            label: "p-elements of p-power index lie in the p-radical",
        },
        TheoremSpec {
            id: "P4.2",
            scope: Scope::Group,
            label: "prime power index elements lie in the second Fitting term",
        },
        TheoremSpec {
            id: "P4.3",
            scope: Scope::Group,
            label: "normal p-subgroup elements of p'-index are non-vanishing",
        },
        TheoremSpec {
            id: "L4.4",
            scope: Scope::Group,
            label: "indices divide along normal subgroups and quotients",
        },
        TheoremSpec {
            id: "T4.5",
            scope: Scope::Factorisation,
            label: "prime power vanishing indices of p-elements in the factors",
        },
        TheoremSpec {
            id: "C4.6",
            scope: Scope::Factorisation,
            label: "prime power vanishing indices make G/F(G) abelian",
        },
        TheoremSpec {
            id: "T5.1",
            scope: Scope::Factorisation,
            label: "p-coprime vanishing indices force p-nilpotency",
        },
        TheoremSpec {
            id: "P5.2",
            scope: Scope::Factorisation,
            label: "factorised p-groups with indices below p^2",
        },
        TheoremSpec {
            id: "T5.4",
            scope: Scope::Factorisation,
            label: "indices prime to p^2 with (p-1,|G|)=1 force soluble p-nilpotent",
        },
        TheoremSpec {
            id: "C5.5",
            scope: Scope::Factorisation,
            label: "trivial-factorisation case of the p^2-free index statement",
        },
        TheoremSpec {
            id: "T5.6",
            scope: Scope::Factorisation,
            label: "p-soluble with p-regular indices prime to p^2 is p-supersoluble",
        },
        TheoremSpec {
            id: "T5.8",
            scope: Scope::Factorisation,
            label: "square-free vanishing indices force supersolubility",
        },
        TheoremSpec {
            id: "T5.9",
            scope: Scope::Factorisation,
            label: "square-free vanishing indices in supersoluble products",
        },
        TheoremSpec {
            id: "C5.10",
            scope: Scope::Factorisation,
            label: "trivial-factorisation case of the square-free index statement",
        },
    ];
    REGISTRY
}

pub fn find_spec(id: &str) -> Result<&'static TheoremSpec> {
    registry()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

/// Index-arithmetic condition placed on vanishing indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMode {
    PrimePower,
    PNumber(u64),
    SquareFree,
    NotDivPSquared(u64),
    PCoprime(u64),
}

impl IndexMode {
    fn accepts(self, n: u64) -> bool {
        match self {
            IndexMode::PrimePower => n == 1 || arith::is_prime_power(n),
            IndexMode::PNumber(p) => arith::is_p_number(n, p),
            IndexMode::SquareFree => arith::is_square_free(n),
            IndexMode::NotDivPSquared(p) => n % (p * p) != 0,
            IndexMode::PCoprime(p) => n % p != 0,
        }
    }
}

/// Which elements of `A ∪ B` the hypothesis quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementFilter {
    AllPpo,
    PElements(u64),
    PRegularPpo(u64),
}

impl ElementFilter {
    fn accepts(self, class: &crate::perm::ElementClass) -> bool {
        match self {
            ElementFilter::AllPpo => class.is_prime_power_order,
            ElementFilter::PElements(p) => class.is_p_element(p) && class.order > 1,
            ElementFilter::PRegularPpo(p) => class.is_prime_power_order && class.is_p_regular(p),
        }
    }
}

/// True iff no p-element of `A ∪ B` is vanishing in `G`.
pub fn hyp_no_vanishing_p_elements(f: &Factorisation, p: u64) -> Result<bool> {
    let g = f.group();
    let profile = vanishing_profile(g)?;
    for x in f.factor_union() {
        let class = classify_element(g, &x)?;
        if class.is_p_element(p) && class.order > 1 && profile.is_vanishing(g, &x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff every element of `A ∪ B` passing `filter` and vanishing in `G`
/// has index satisfying `mode`.
pub fn hyp_vanishing_ppo_index(
    f: &Factorisation,
    mode: IndexMode,
    filter: ElementFilter,
) -> Result<bool> {
    Ok(vanishing_filtered_indices(f, filter)?
        .iter()
        .all(|&(_, idx)| mode.accepts(idx as u64)))
}

/// Indices `i_G(x)` of the vanishing elements of `A ∪ B` passing `filter`.
fn vanishing_filtered_indices(
    f: &Factorisation,
    filter: ElementFilter,
) -> Result<Vec<(Perm, usize)>> {
    let g = f.group();
    let profile = vanishing_profile(g)?;
    let mut out = Vec::new();
    for x in f.factor_union() {
        if !profile.is_vanishing(g, &x)? {
            continue;
        }
        let class = classify_element(g, &x)?;
        if filter.accepts(&class) {
            let idx = index(g, &x)?;
            out.push((x, idx));
        }
    }
    Ok(out)
}

fn sub(name: &str, holds: bool) -> SubClause {
    SubClause {
        name: name.to_string(),
        holds,
    }
}

fn outcome(
    theorem: &str,
    instance: &str,
    params: String,
    hypothesis_holds: bool,
    audit: bool,
    subclauses: impl FnOnce() -> Result<Vec<SubClause>>,
) -> Result<CheckOutcome> {
    let started = Instant::now();
    let (conclusion_holds, clauses) = if hypothesis_holds || audit {
        let clauses = subclauses()?;
        (Some(clauses.iter().all(|c| c.holds)), clauses)
    } else {
        (None, Vec::new())
    };
    Ok(CheckOutcome {
        theorem: theorem.to_string(),
        instance: instance.to_string(),
        params,
        hypothesis_holds,
        conclusion_holds,
        subclauses: clauses,
        elapsed: started.elapsed(),
    })
}

fn group_primes(g: &Group) -> Vec<u64> {
    arith::prime_divisors(g.order() as u64)
}

fn sylow_is_normal(g: &Arc<Group>, p: u64) -> Result<bool> {
    let syl = sylow(g, p)?;
    Ok(is_normal_in(&syl, g))
}

fn quotient_has_normal_sylow(g: &Arc<Group>, n: &Arc<Group>, p: u64) -> Result<bool> {
    let q = coset_action_quotient(g, n)?;
    sylow_is_normal(&q.quotient, p)
}

/// Pointwise centralizer of `n` inside `m` (both subgroups of one group).
fn centralizer_of_subgroup_in(m: &Arc<Group>, n: &Group) -> Vec<Perm> {
    m.elements()
        .iter()
        .filter(|x| n.generators().iter().all(|g| x.compose(g) == g.compose(x)))
        .cloned()
        .collect()
}

/// Conclusions shared by the p-group statements: `P' <= Phi(P) <= Z(P)`,
/// `P'` elementary abelian of order at most `p^2`.
fn p_group_conclusions(p_subgroup: &Arc<Group>, p: u64) -> Result<Vec<SubClause>> {
    let derived_sub = derived(p_subgroup);
    let frattini = frattini_of_pgroup(p_subgroup, p)?;
    let centre = center(p_subgroup);
    Ok(vec![
        sub(
            "derived subgroup lies in the Frattini subgroup",
            derived_sub.is_subgroup_of(&frattini),
        ),
        sub(
            "Frattini subgroup lies in the centre",
            frattini.is_subgroup_of(&centre),
        ),
        sub(
            "derived subgroup is elementary abelian",
            is_elementary_abelian(&derived_sub),
        ),
        sub(
            "derived subgroup has order at most p^2",
            derived_sub.order() as u64 <= p * p,
        ),
    ])
}

fn eval_l22(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let hyp = f.is_core();
    let out = outcome("L2.2", name, String::new(), hyp, audit, || {
        let g = f.group();
        let mut all_inherit = true;
        for m in all_normals(g) {
            if m.order() == g.order() {
                continue;
            }
            let induced = crate::factcheck::induced_factorisation(f, &m)?;
            if !induced.is_core() {
                all_inherit = false;
                break;
            }
        }
        Ok(vec![sub("every proper quotient is a core-factorisation", all_inherit)])
    })?;
    Ok(vec![out])
}

fn eval_l24(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let out = outcome("L2.4", name, String::new(), true, audit, || {
        let witness = chief_witness(f);
        let equivalent = f.is_core() == witness.is_some();
        let witness_sound = match &witness {
            Some(w) => verify_witness(f, w).is_ok() && !w.backtracked,
            None => true,
        };
        Ok(vec![
            sub("definition verdict equals witness existence", equivalent),
            sub("returned witness passes cover and prefactorised checks", witness_sound),
        ])
    })?;
    Ok(vec![out])
}

fn eval_l31(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let normals = all_normals(g);
    let minimals: Vec<Arc<Group>> = if g.is_trivial() {
        Vec::new()
    } else {
        minimal_normals(g)?
    };
    let mut pairs = Vec::new();
    for n in &minimals {
        for m in &normals {
            if !n.is_subgroup_of(m) || m.order() == n.order() {
                continue;
            }
            if arith::gcd(n.order() as u64, (m.order() / n.order()) as u64) != 1 {
                continue;
            }
            let cent = centralizer_of_subgroup_in(m, n);
            if !cent.iter().all(|x| n.contains(x)) {
                continue;
            }
            // M/N abelian iff the derived subgroup of M lies in N.
            if !derived(m).is_subgroup_of(n) {
                continue;
            }
            pairs.push((Arc::clone(n), Arc::clone(m)));
        }
    }
    let hyp = !pairs.is_empty();
    let out = outcome("L3.1", name, String::new(), hyp, audit, || {
        let profile = vanishing_profile(g)?;
        let mut all_vanish = true;
        for (n, m) in &pairs {
            for x in m.elements() {
                if !n.contains(x) && !profile.is_vanishing(g, x)? {
                    all_vanish = false;
                }
            }
        }
        Ok(vec![sub("elements of M outside N vanish in G", all_vanish)])
    })?;
    Ok(vec![out])
}

fn eval_l32(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let normals = all_normals(g);
    let minimals: Vec<Arc<Group>> = if g.is_trivial() {
        Vec::new()
    } else {
        minimal_normals(g)?
    };
    let mut triples = Vec::new();
    for k in minimals.iter().filter(|k| k.is_abelian()) {
        for n in &normals {
            if n.order() == g.order() {
                continue;
            }
            let q = coset_action_quotient(g, n)?;
            let upstairs_minimals = if q.quotient.is_trivial() {
                continue;
            } else {
                minimal_normals(&q.quotient)?
            };
            for m in &normals {
                if !n.is_subgroup_of(m) || m.order() == n.order() {
                    continue;
                }
                let image = q.project_subgroup(m)?;
                if !upstairs_minimals.iter().any(|u| u.as_ref() == image.as_ref()) {
                    continue;
                }
                if arith::gcd(k.order() as u64, (m.order() / n.order()) as u64) != 1 {
                    continue;
                }
                let cent = centralizer_of_subgroup_in(m, k);
                let cent_matches_n =
                    cent.len() == n.order() && cent.iter().all(|x| n.contains(x));
                if !cent_matches_n {
                    continue;
                }
                triples.push((Arc::clone(n), Arc::clone(m)));
            }
        }
    }
    let hyp = !triples.is_empty();
    let out = outcome("L3.2", name, String::new(), hyp, audit, || {
        let profile = vanishing_profile(g)?;
        let mut all_vanish = true;
        for (n, m) in &triples {
            for x in m.elements() {
                if !n.contains(x) && !profile.is_vanishing(g, x)? {
                    all_vanish = false;
                }
            }
        }
        Ok(vec![sub("chief-factor elements outside the base vanish", all_vanish)])
    })?;
    Ok(vec![out])
}

fn eval_l33(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let mut outcomes = Vec::new();
    for n in all_normals(g) {
        if n.is_trivial() {
            continue;
        }
        // Re-root so the subgroup's own character table is computed.
        let n_rooted = Group::generate(n.generators(), n.degree(), n.order())?;
        for p in group_primes(&n) {
            let hyp = has_p_defect_zero(&n_rooted, p)?;
            let params = format!("N order {}, p={p}", n.order());
            let n_ref = &n;
            outcomes.push(outcome("L3.3", name, params, hyp, audit, || {
                let profile = vanishing_profile(g)?;
                let mut all = true;
                for x in n_ref.elements() {
                    if x.order() % p == 0 && !profile.is_vanishing(g, x)? {
                        all = false;
                    }
                }
                Ok(vec![sub(
                    "order divisible by p inside N forces vanishing in G",
                    all,
                )])
            })?);
        }
    }
    Ok(outcomes)
}

fn eval_p34(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let simple = !g.is_trivial() && all_normals(g).len() == 2;
    let hyp = simple && !g.is_abelian();
    let out = outcome("P3.4", name, String::new(), hyp, audit, || {
        let profile = vanishing_profile(g)?;
        let mut clauses = Vec::new();
        for p in group_primes(g) {
            let defect_zero = has_p_defect_zero(g, p)?;
            let vanishing_p_element = g.elements().iter().any(|x| {
                arith::is_p_number(x.order(), p)
                    && x.order() > 1
                    && profile.is_vanishing(g, x).unwrap_or(false)
            });
            clauses.push(sub(
                &format!("p={p}: defect zero or vanishing p-element"),
                defect_zero || vanishing_p_element,
            ));
        }
        Ok(clauses)
    })?;
    Ok(vec![out])
}

fn eval_p35(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let minimals: Vec<Arc<Group>> = if g.is_trivial() {
        Vec::new()
    } else {
        minimal_normals(g)?
    };
    let targets: Vec<Arc<Group>> = minimals.into_iter().filter(|n| !n.is_abelian()).collect();
    let hyp = !targets.is_empty();
    let out = outcome("P3.5", name, String::new(), hyp, audit, || {
        let profile = vanishing_profile(g)?;
        let mut clauses = Vec::new();
        for n in &targets {
            for p in group_primes(n) {
                let found = n.elements().iter().any(|x| {
                    arith::is_p_number(x.order(), p)
                        && x.order() > 1
                        && profile.is_vanishing(g, x).unwrap_or(false)
                });
                clauses.push(sub(
                    &format!("minimal normal of order {}: vanishing {p}-element", n.order()),
                    found,
                ));
            }
        }
        Ok(clauses)
    })?;
    Ok(vec![out])
}

fn eval_t36(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let mut outcomes = Vec::new();
    for p in group_primes(g) {
        let hyp = f.is_core() && hyp_no_vanishing_p_elements(f, p)?;
        outcomes.push(outcome("T3.6", name, format!("p={p}"), hyp, audit, || {
            Ok(vec![sub("Sylow p-subgroup is normal", sylow_is_normal(g, p)?)])
        })?);
    }
    Ok(outcomes)
}

fn eval_c37(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let primes = group_primes(g);
    let mut outcomes = Vec::new();
    // All nonempty subsets of the prime spectrum.
    for mask in 1u32..(1 << primes.len()) {
        let sigma: Vec<u64> = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &p)| p)
            .collect();
        let profile = vanishing_profile(g)?;
        let mut no_vanishing_sigma_ppo = true;
        for x in f.factor_union() {
            let class = classify_element(g, &x)?;
            if class.is_prime_power_order
                && class.is_sigma_element(&sigma)
                && profile.is_vanishing(g, &x)?
            {
                no_vanishing_sigma_ppo = false;
                break;
            }
        }
        let hyp = f.is_core() && no_vanishing_sigma_ppo;
        let params = format!(
            "sigma={{{}}}",
            sigma.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        );
        outcomes.push(outcome("C3.7", name, params, hyp, audit, || {
            Ok(vec![sub(
                "nilpotent normal Hall sigma-subgroup exists",
                normal_hall_nilpotent(g, &sigma).holds,
            )])
        })?);
    }
    Ok(outcomes)
}

fn eval_c38(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let primes = group_primes(g);
    let mut outcomes = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            let profile = vanishing_profile(g)?;
            let mut orders_confined = true;
            for x in f.factor_union() {
                if profile.is_vanishing(g, &x)? {
                    let class = classify_element(g, &x)?;
                    if !class.is_sigma_element(&[p, q]) {
                        orders_confined = false;
                        break;
                    }
                }
            }
            let hyp = f.is_core() && orders_confined;
            outcomes.push(outcome(
                "C3.8",
                name,
                format!("p={p}, q={q}"),
                hyp,
                audit,
                || Ok(vec![sub("G is soluble", cached_report(g).is_soluble)]),
            )?);
        }
    }
    Ok(outcomes)
}

fn eval_p39(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let hyp = cached_report(g).is_supersoluble;
    let out = outcome("P3.9", name, String::new(), hyp, audit, || {
        let profile = vanishing_profile(g)?;
        let zf = center(&fitting(g));
        let mut all = true;
        for x in g.elements() {
            if !zf.contains(x) && !profile.is_vanishing(g, x)? {
                all = false;
            }
        }
        Ok(vec![sub(
            "elements outside Z(F(G)) are vanishing",
            all,
        )])
    })?;
    Ok(vec![out])
}

fn eval_c310(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let hyp = f.is_core();
    let out = outcome("C3.10", name, String::new(), hyp, audit, || {
        let profile = vanishing_profile(g)?;
        let mut none_vanishing = true;
        let mut none_ppo_vanishing = true;
        for x in f.factor_union() {
            if profile.is_vanishing(g, &x)? {
                none_vanishing = false;
                let class = classify_element(g, &x)?;
                if class.is_prime_power_order {
                    none_ppo_vanishing = false;
                }
            }
        }
        let abelian = g.is_abelian();
        Ok(vec![
            sub(
                "no vanishing factor elements iff abelian",
                none_vanishing == abelian,
            ),
            sub(
                "no vanishing prime power order factor elements iff abelian",
                none_ppo_vanishing == abelian,
            ),
        ])
    })?;
    Ok(vec![out])
}

fn eval_l41(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let mut outcomes = Vec::new();
    for p in group_primes(g) {
        outcomes.push(outcome("L4.1", name, format!("p={p}"), true, audit, || {
            let radical = crate::structure::o_p(g, p)?;
            let mut all = true;
            for x in g.elements() {
                if arith::is_p_number(x.order(), p)
                    && arith::is_p_number(index(g, x)? as u64, p)
                    && !radical.contains(x)
                {
                    all = false;
                }
            }
            Ok(vec![sub("p-elements of p-power index lie in O_p", all)])
        })?);
    }
    Ok(outcomes)
}

fn eval_p42(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let out = outcome("P4.2", name, String::new(), true, audit, || {
        let f2 = crate::structure::fitting2(g);
        let mut all = true;
        for x in g.elements() {
            let idx = index(g, x)? as u64;
            if (idx == 1 || arith::is_prime_power(idx)) && !f2.contains(x) {
                all = false;
            }
        }
        Ok(vec![sub("prime power index elements lie in F_2(G)", all)])
    })?;
    Ok(vec![out])
}

fn eval_p43(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let mut outcomes = Vec::new();
    for p in group_primes(g) {
        let p_normals: Vec<Arc<Group>> = all_normals(g)
            .into_iter()
            .filter(|n| !n.is_trivial() && n.is_p_group(p))
            .collect();
        let hyp = !p_normals.is_empty();
        outcomes.push(outcome("P4.3", name, format!("p={p}"), hyp, audit, || {
            let profile = vanishing_profile(g)?;
            let mut all = true;
            for n in &p_normals {
                for x in n.elements() {
                    if index(g, x)? as u64 % p != 0 && profile.is_vanishing(g, x)? {
                        all = false;
                    }
                }
            }
            Ok(vec![sub(
                "p'-index elements of normal p-subgroups are non-vanishing",
                all,
            )])
        })?);
    }
    Ok(outcomes)
}

fn eval_l44(name: &str, g: &Arc<Group>, audit: bool) -> Result<Vec<CheckOutcome>> {
    let out = outcome("L4.4", name, String::new(), true, audit, || {
        let mut part_a = true;
        let mut part_b = true;
        for n in all_normals(g) {
            if n.order() < g.order() {
                let q = coset_action_quotient(g, &n)?;
                for x in g.elements() {
                    let down = index(&q.quotient, &q.project(x)?)?;
                    if index(g, x)? % down != 0 {
                        part_b = false;
                    }
                }
            }
            for x in n.elements() {
                let inner = index(&n, x)?;
                if index(g, x)? % inner != 0 {
                    part_a = false;
                }
            }
        }
        Ok(vec![
            sub("i_N(x) divides i_G(x) for normal N", part_a),
            sub("i_{G/N}(xN) divides i_G(x)", part_b),
        ])
    })?;
    Ok(vec![out])
}

fn eval_t45(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let mut outcomes = Vec::new();
    for p in group_primes(g) {
        let indices = vanishing_filtered_indices(f, ElementFilter::PElements(p))?;
        let all_prime_power = indices
            .iter()
            .all(|&(_, idx)| IndexMode::PrimePower.accepts(idx as u64));
        let hyp = f.is_core() && all_prime_power;
        let all_p_numbers = indices
            .iter()
            .all(|&(_, idx)| IndexMode::PNumber(p).accepts(idx as u64));
        outcomes.push(outcome("T4.5", name, format!("p={p}"), hyp, audit, || {
            let report = cached_report(g);
            let radical = &report.per_prime[&p].o_p;
            let centralizing = Group::subgroup_from_elements(g, centralizer_of_subgroup_in(g, radical));
            let mut clauses = vec![sub(
                "all p-number indices force a normal Sylow p-subgroup",
                !all_p_numbers || sylow_is_normal(g, p)?,
            )];
            clauses.push(sub(
                "G/C_G(O_p(G)) has a normal Sylow p-subgroup",
                quotient_has_normal_sylow(g, &centralizing, p)?,
            ));
            clauses.push(sub(
                "G/F(G) has a normal Sylow p-subgroup",
                quotient_has_normal_sylow(g, &report.fitting, p)?,
            ));
            clauses.push(sub(
                "G/O_{p'}(G) has a normal Sylow p-subgroup",
                quotient_has_normal_sylow(g, &report.per_prime[&p].o_pprime, p)?,
            ));
            clauses.push(sub(
                "G is p-soluble of p-length at most 1",
                report.per_prime[&p].is_p_soluble
                    && report.per_prime[&p].p_length.map_or(false, |l| l <= 1),
            ));
            Ok(clauses)
        })?);
    }
    Ok(outcomes)
}

fn eval_c46(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let indices = vanishing_filtered_indices(f, ElementFilter::AllPpo)?;
    let hyp = f.is_core()
        && indices
            .iter()
            .all(|&(_, idx)| IndexMode::PrimePower.accepts(idx as u64));
    let out = outcome("C4.6", name, String::new(), hyp, audit, || {
        let report = cached_report(g);
        let q = coset_action_quotient(g, &report.fitting)?;
        let mut clauses = vec![sub("G/F(G) is abelian", q.quotient.is_abelian())];
        if !indices.is_empty() {
            for p in group_primes(g) {
                if indices
                    .iter()
                    .all(|&(_, idx)| IndexMode::PNumber(p).accepts(idx as u64))
                {
                    let syl_normal = sylow_is_normal(g, p)?;
                    let syl = &report.per_prime[&p].sylow;
                    let hall_abelian = if syl_normal {
                        coset_action_quotient(g, syl)?.quotient.is_abelian()
                    } else {
                        false
                    };
                    clauses.push(sub(
                        &format!("p={p}: normal Sylow p and abelian Hall p'-subgroups"),
                        syl_normal && hall_abelian,
                    ));
                }
            }
        }
        Ok(clauses)
    })?;
    Ok(vec![out])
}

fn eval_t51(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let mut outcomes = Vec::new();
    for p in group_primes(g) {
        let hyp_regular = f.is_core()
            && hyp_vanishing_ppo_index(f, IndexMode::PCoprime(p), ElementFilter::PRegularPpo(p))?;
        let hyp_all =
            f.is_core() && hyp_vanishing_ppo_index(f, IndexMode::PCoprime(p), ElementFilter::AllPpo)?;
        outcomes.push(outcome("T5.1", name, format!("p={p}"), hyp_regular, audit, || {
            let report = cached_report(g);
            let p_nilpotent = report.per_prime[&p].is_p_nilpotent;
            let mut clauses = vec![sub("G is p-nilpotent", p_nilpotent)];
            clauses.push(sub(
                "p-coprime indices over all prime power order elements give abelian Sylow p",
                !hyp_all || (p_nilpotent && report.per_prime[&p].sylow.is_abelian()),
            ));
            Ok(clauses)
        })?);
    }
    Ok(outcomes)
}

fn eval_p52(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let primes = group_primes(g);
    // Scope: any factorisation of a p-group; the core condition is not
    // required here.
    if primes.len() != 1 {
        return Ok(vec![CheckOutcome {
            theorem: "P5.2".into(),
            instance: name.into(),
            params: String::new(),
            hypothesis_holds: false,
            conclusion_holds: None,
            subclauses: Vec::new(),
            elapsed: Duration::default(),
        }]);
    }
    let p = primes[0];
    let profile = vanishing_profile(g)?;
    let mut indices_small = true;
    for x in f.factor_union() {
        if profile.is_vanishing(g, &x)? && (index(g, &x)? as u64) % (p * p) == 0 {
            indices_small = false;
            break;
        }
    }
    let out = outcome("P5.2", name, format!("p={p}"), indices_small, audit, || {
        p_group_conclusions(g, p)
    })?;
    Ok(vec![out])
}

fn t54_style(
    id: &'static str,
    name: &str,
    f: &Factorisation,
    audit: bool,
    require_trivial: bool,
) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let order = g.order() as u64;
    let mut outcomes = Vec::new();
    for p in group_primes(g) {
        if arith::gcd(p - 1, order) != 1 {
            continue;
        }
        let hyp = f.is_core()
            && (!require_trivial || f.is_trivial_factorisation())
            && hyp_vanishing_ppo_index(f, IndexMode::NotDivPSquared(p), ElementFilter::AllPpo)?;
        outcomes.push(outcome(id, name, format!("p={p}"), hyp, audit, || {
            let report = cached_report(g);
            let mut clauses = vec![
                sub("G is soluble", report.is_soluble),
                sub("G is p-nilpotent", report.per_prime[&p].is_p_nilpotent),
            ];
            clauses.extend(p_group_conclusions(&report.per_prime[&p].sylow, p)?);
            Ok(clauses)
        })?);
    }
    Ok(outcomes)
}

fn eval_t56(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let mut outcomes = Vec::new();
    for p in group_primes(g) {
        let hyp = f.is_core()
            && cached_report(g).per_prime[&p].is_p_soluble
            && hyp_vanishing_ppo_index(
                f,
                IndexMode::NotDivPSquared(p),
                ElementFilter::PRegularPpo(p),
            )?;
        outcomes.push(outcome("T5.6", name, format!("p={p}"), hyp, audit, || {
            Ok(vec![sub(
                "G is p-supersoluble",
                cached_report(g).per_prime[&p].is_p_supersoluble,
            )])
        })?);
    }
    Ok(outcomes)
}

/// Conclusions shared by the square-free index statements: a statement about
/// the derived subgroup and the Fitting derived subgroup.
fn square_free_conclusions(g: &Arc<Group>) -> Result<Vec<SubClause>> {
    let derived_sub = derived(g);
    let derived_rooted = Group::generate(derived_sub.generators(), derived_sub.degree(), derived_sub.order().max(1))?;
    let mut clauses = vec![sub("derived subgroup is abelian", derived_sub.is_abelian())];
    let mut elementary = true;
    for p in group_primes(&derived_rooted) {
        let syl = sylow(&derived_rooted, p)?;
        if !is_elementary_abelian(&syl) {
            elementary = false;
        }
    }
    clauses.push(sub("derived subgroup has elementary abelian Sylows", elementary));
    let fitting_sub = fitting(g);
    let fitting_rooted = Group::generate(fitting_sub.generators(), fitting_sub.degree(), fitting_sub.order().max(1))?;
    let fitting_derived = derived(&fitting_rooted);
    let small = group_primes(&fitting_derived)
        .iter()
        .all(|&p| arith::p_part(fitting_derived.order() as u64, p) <= p * p);
    clauses.push(sub(
        "F(G)' has Sylow p-subgroups of order at most p^2",
        small,
    ));
    Ok(clauses)
}

fn t58_style(
    id: &'static str,
    name: &str,
    f: &Factorisation,
    audit: bool,
    require_trivial: bool,
) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    let hyp = f.is_core()
        && (!require_trivial || f.is_trivial_factorisation())
        && hyp_vanishing_ppo_index(f, IndexMode::SquareFree, ElementFilter::AllPpo)?;
    let out = outcome(id, name, String::new(), hyp, audit, || {
        let mut clauses = vec![sub("G is supersoluble", cached_report(g).is_supersoluble)];
        clauses.extend(square_free_conclusions(g)?);
        Ok(clauses)
    })?;
    Ok(vec![out])
}

fn eval_t59(name: &str, f: &Factorisation, audit: bool) -> Result<Vec<CheckOutcome>> {
    let g = f.group();
    // Arbitrary factorisation of a supersoluble group; no core condition.
    let hyp = cached_report(g).is_supersoluble
        && hyp_vanishing_ppo_index(f, IndexMode::SquareFree, ElementFilter::AllPpo)?;
    let out = outcome("T5.9", name, String::new(), hyp, audit, || {
        square_free_conclusions(g)
    })?;
    Ok(vec![out])
}

/// Evaluates one registry statement on one instance, sweeping its parameters.
pub fn run_theorem(id: &str, instance: &Instance, audit: bool) -> Result<Vec<CheckOutcome>> {
    let spec = find_spec(id)?;
    if spec.scope != instance.scope() {
        return Ok(Vec::new());
    }
    let name = instance.name();
    match instance {
        Instance::Group { group, .. } => match id {
            "L3.1" => eval_l31(name, group, audit),
            "L3.2" => eval_l32(name, group, audit),
            "L3.3" => eval_l33(name, group, audit),
            "P3.4" => eval_p34(name, group, audit),
            "P3.5" => eval_p35(name, group, audit),
            "P3.9" => eval_p39(name, group, audit),
            "L4.1" => eval_l41(name, group, audit),
            "P4.2" => eval_p42(name, group, audit),
            "P4.3" => eval_p43(name, group, audit),
            "L4.4" => eval_l44(name, group, audit),
            _ => Err(Error::UnknownTheorem(id.to_string())),
        },
        Instance::Fact { fact, .. } => match id {
            "L2.2" => eval_l22(name, fact, audit),
            "L2.4" => eval_l24(name, fact, audit),
            "T3.6" => eval_t36(name, fact, audit),
            "C3.7" => eval_c37(name, fact, audit),
            "C3.8" => eval_c38(name, fact, audit),
            "C3.10" => eval_c310(name, fact, audit),
            "T4.5" => eval_t45(name, fact, audit),
            "C4.6" => eval_c46(name, fact, audit),
            "T5.1" => eval_t51(name, fact, audit),
            "P5.2" => eval_p52(name, fact, audit),
            "T5.4" => t54_style("T5.4", name, fact, audit, false),
            "C5.5" => t54_style("C5.5", name, fact, audit, true),
            "T5.6" => eval_t56(name, fact, audit),
            "T5.8" => t58_style("T5.8", name, fact, audit, false),
            "T5.9" => eval_t59(name, fact, audit),
            "C5.10" => t58_style("C5.10", name, fact, audit, true),
            _ => Err(Error::UnknownTheorem(id.to_string())),
        },
    }
}

/// Full sweep in deterministic order: registry order outer, instance order
/// inner.
pub fn run_harness(instances: &[Instance], selection: &[String], audit: bool) -> Result<HarnessReport> {
    let ids: Vec<&'static str> = if selection.len() == 1 && selection[0] == "all" {
        registry().iter().map(|s| s.id).collect()
    } else {
        let mut ids = Vec::new();
        for id in selection {
            ids.push(find_spec(id)?.id);
        }
        ids
    };
    let mut outcomes = Vec::new();
    let mut coverage: BTreeMap<String, usize> = ids.iter().map(|id| (id.to_string(), 0)).collect();
    for id in &ids {
        for instance in instances {
            for out in run_theorem(id, instance, audit)? {
                if out.hypothesis_holds {
                    *coverage.get_mut(*id).unwrap() += 1;
                }
                outcomes.push(out);
            }
        }
    }
    let failures = outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| o.is_failure())
        .map(|(i, _)| i)
        .collect();
    Ok(HarnessReport {
        outcomes,
        coverage,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factcheck::make_factorisation;

    fn group(gens: &[&str], degree: usize) -> Arc<Group> {
        let parsed: Vec<Perm> = gens.iter().map(|s| Perm::parse(s, degree).unwrap()).collect();
        Group::generate(&parsed, degree, 20000).unwrap()
    }

    fn trivial_fact(g: &Arc<Group>) -> Arc<Factorisation> {
        Arc::new(make_factorisation(g, g, g).unwrap())
    }

    fn frobenius20_fact() -> (Arc<Group>, Arc<Factorisation>) {
        let g = group(&["(1,2,3,4,5)", "(2,3,5,4)"], 5);
        let a = Group::subgroup_generated(&g, &[Perm::parse("(1,2,3,4,5)", 5).unwrap()]).unwrap();
        let b = Group::subgroup_generated(&g, &[Perm::parse("(2,3,5,4)", 5).unwrap()]).unwrap();
        (Arc::clone(&g), Arc::new(make_factorisation(&g, &a, &b).unwrap()))
    }

    #[test]
    fn t36_on_abelian_c6() {
        let c6 = group(&["(1,2,3,4,5,6)"], 6);
        let f = trivial_fact(&c6);
        let instance = Instance::Fact {
            name: "c6".into(),
            fact: f,
        };
        let outcomes = run_theorem("T3.6", &instance, false).unwrap();
        assert_eq!(outcomes.len(), 2);
        for o in outcomes {
            assert!(o.hypothesis_holds);
            assert_eq!(o.conclusion_holds, Some(true));
        }
    }

    #[test]
    fn t36_hypothesis_fails_on_fixture() {
        // ((2,3,4),1) in B is a vanishing 3-element of the product group.
        let g = group(&["(1,2)", "(1,2,3,4)", "(5,6)"], 6);
        let a = Group::subgroup_generated(
            &g,
            &[
                Perm::parse("(1,2)(5,6)", 6).unwrap(),
                Perm::parse("(3,4)(5,6)", 6).unwrap(),
                Perm::parse("(1,3)(2,4)(5,6)", 6).unwrap(),
            ],
        )
        .unwrap();
        let b = Group::subgroup_generated(
            &g,
            &[
                Perm::parse("(2,3,4)", 6).unwrap(),
                Perm::parse("(3,4)", 6).unwrap(),
                Perm::parse("(5,6)", 6).unwrap(),
            ],
        )
        .unwrap();
        let f = Arc::new(make_factorisation(&g, &a, &b).unwrap());
        assert!(!hyp_no_vanishing_p_elements(&f, 3).unwrap());
    }

    #[test]
    fn t54_on_frobenius20() {
        let (_, f) = frobenius20_fact();
        let instance = Instance::Fact {
            name: "f20".into(),
            fact: f,
        };
        let outcomes = run_theorem("T5.4", &instance, false).unwrap();
        // p = 2 qualifies ((2-1, 20) = 1); p = 5 does not ((4, 20) = 4).
        assert_eq!(outcomes.len(), 1);
        let o = &outcomes[0];
        assert_eq!(o.params, "p=2");
        assert!(o.hypothesis_holds);
        assert_eq!(o.conclusion_holds, Some(true));
    }

    #[test]
    fn frobenius20_negative_control() {
        // O_2(G) = 1 and the Sylow 2-subgroup is cyclic of order 4, not
        // elementary abelian.
        let (g, _) = frobenius20_fact();
        let report = cached_report(&g);
        assert_eq!(report.per_prime[&2].o_p.order(), 1);
        let syl2 = &report.per_prime[&2].sylow;
        assert_eq!(syl2.order(), 4);
        assert!(!is_elementary_abelian(syl2));
        assert!(syl2.elements().iter().any(|x| x.order() == 4));
    }

    #[test]
    fn c310_both_directions() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let instance = Instance::Fact {
            name: "s3".into(),
            fact: trivial_fact(&s3),
        };
        let outcomes = run_theorem("C3.10", &instance, false).unwrap();
        assert!(outcomes[0].conclusion_holds.unwrap());

        let c6 = group(&["(1,2,3,4,5,6)"], 6);
        let instance = Instance::Fact {
            name: "c6".into(),
            fact: trivial_fact(&c6),
        };
        let outcomes = run_theorem("C3.10", &instance, false).unwrap();
        assert!(outcomes[0].conclusion_holds.unwrap());
    }

    #[test]
    fn p34_on_a5() {
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        let instance = Instance::Group {
            name: "a5".into(),
            group: a5,
        };
        let outcomes = run_theorem("P3.4", &instance, false).unwrap();
        assert!(outcomes[0].hypothesis_holds);
        assert_eq!(outcomes[0].conclusion_holds, Some(true));
        assert_eq!(outcomes[0].subclauses.len(), 3);
    }

    #[test]
    fn harness_runs_clean_on_small_catalog() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let (f20, f20_fact) = frobenius20_fact();
        let instances = vec![
            Instance::Group {
                name: "s3".into(),
                group: Arc::clone(&s3),
            },
            Instance::Group {
                name: "s4".into(),
                group: Arc::clone(&s4),
            },
            Instance::Group {
                name: "f20".into(),
                group: f20,
            },
            Instance::Fact {
                name: "s3:trivial".into(),
                fact: trivial_fact(&s3),
            },
            Instance::Fact {
                name: "f20:ab".into(),
                fact: f20_fact,
            },
        ];
        let report = run_harness(&instances, &["all".to_string()], false).unwrap();
        assert!(!report.has_failures(), "failures: {:?}", report.failures);
        assert!(report.coverage["T5.4"] >= 1);
        assert!(report.coverage["L4.4"] >= 1);

        let err = run_harness(&instances, &["T9.9".to_string()], false).unwrap_err();
        assert!(matches!(err, Error::UnknownTheorem(_)));
    }

    #[test]
    fn audit_mode_evaluates_failed_hypotheses() {
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        let instance = Instance::Fact {
            name: "a5".into(),
            fact: trivial_fact(&a5),
        };
        let plain = run_theorem("T5.8", &instance, false).unwrap();
        assert!(!plain[0].hypothesis_holds);
        assert_eq!(plain[0].conclusion_holds, None);
        let audited = run_theorem("T5.8", &instance, true).unwrap();
        assert_eq!(audited[0].conclusion_holds, Some(false));
        assert!(!audited[0].is_failure());
    }
}
