//! Normal-subgroup machinery and structural predicates.
//!
//! Normal subgroups are enumerated by join-closure of element normal
//! closures, which is complete because every normal subgroup is the join of
//! the normal closures of its elements. Everything downstream (minimal
//! normals, chief series, radicals, Fitting terms, solubility flags) is
//! derived from that lattice plus coset-action quotients.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::arith;
use crate::error::{Error, Result};
use crate::perm::{coset_action_quotient, is_normal_in, Group, Perm};

/// An ascending normal series from the trivial group to `G`.
#[derive(Clone)]
pub struct NormalSeries {
    pub terms: Vec<Arc<Group>>,
    pub factor_orders: Vec<usize>,
}

impl NormalSeries {
    /// Structural checks: strict ascent, normality of every term in `g`,
    /// endpoints, factor orders.
    pub fn verify_in(&self, g: &Arc<Group>) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::Internal("empty series".into()));
        }
        if !self.terms[0].is_trivial() {
            return Err(Error::Internal("series must start at the trivial group".into()));
        }
        if self.terms.last().unwrap().as_ref() != g.as_ref() {
            return Err(Error::Internal("series must end at the whole group".into()));
        }
        for (i, term) in self.terms.iter().enumerate() {
            if !is_normal_in(term, g) {
                return Err(Error::Internal(format!("term {i} is not normal")));
            }
            if i > 0 {
                let prev = &self.terms[i - 1];
                if !prev.is_subgroup_of(term) || prev.order() >= term.order() {
                    return Err(Error::Internal(format!("no strict ascent at term {i}")));
                }
                if self.factor_orders[i - 1] != term.order() / prev.order() {
                    return Err(Error::Internal(format!("factor order mismatch at {i}")));
                }
            }
        }
        Ok(())
    }

    /// Chief-series check: every factor is a minimal normal subgroup of the
    /// corresponding quotient, verified through the coset action.
    pub fn verify_chief_in(&self, g: &Arc<Group>) -> Result<()> {
        self.verify_in(g)?;
        for i in 1..self.terms.len() {
            let q = coset_action_quotient(g, &self.terms[i - 1])?;
            let image = q.project_subgroup(&self.terms[i])?;
            let minimals = minimal_normals(&q.quotient)?;
            if !minimals.iter().any(|m| m.as_ref() == image.as_ref()) {
                return Err(Error::Internal(format!(
                    "factor {i} is not minimal normal in the quotient"
                )));
            }
        }
        Ok(())
    }
}

/// Sorted element set of the product `A·B`.
pub fn set_product(a: &Group, b: &Group) -> Vec<Perm> {
    let mut out = BTreeSet::new();
    for x in a.elements() {
        for y in b.elements() {
            out.insert(x.compose(y));
        }
    }
    out.into_iter().collect()
}

/// Intersection of two subgroups of a common parent.
pub fn intersection(parent: &Arc<Group>, a: &Group, b: &Group) -> Arc<Group> {
    let elements: Vec<Perm> = a
        .elements()
        .iter()
        .filter(|x| b.contains(x))
        .cloned()
        .collect();
    Group::subgroup_from_elements(parent, elements)
}

/// Subgroup generated by two subgroups of a common parent.
pub fn join(parent: &Arc<Group>, a: &Group, b: &Group) -> Arc<Group> {
    let mut gens: Vec<Perm> = a.generators().to_vec();
    gens.extend(b.generators().iter().cloned());
    gens.retain(|g| !g.is_identity());
    gens.dedup();
    Group::subgroup_generated(parent, &gens).expect("join of subgroups stays inside parent")
}

/// Smallest normal subgroup of `g` containing `seeds`.
///
/// The full conjugate set is the orbit of the seeds under generator
/// conjugation; its multiplicative closure is normal.
pub fn normal_closure(g: &Arc<Group>, seeds: &[Perm]) -> Result<Arc<Group>> {
    for s in seeds {
        if !g.contains(s) {
            return Err(Error::NotInGroup);
        }
    }
    let mut orbit: BTreeSet<Perm> = seeds.iter().cloned().collect();
    orbit.remove(&g.identity());
    let mut queue: VecDeque<Perm> = orbit.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for gen in g.generators() {
            let y = x.conjugate_by(gen);
            if orbit.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let conjugates: Vec<Perm> = orbit.into_iter().collect();
    let closure = Group::subgroup_generated(g, &conjugates)?;
    Ok(closure)
}

/// Largest normal subgroup of `g` contained in `h`: the intersection of the
/// conjugates `h^x` taken over coset representatives of `h`.
pub fn core(g: &Arc<Group>, h: &Arc<Group>) -> Result<Arc<Group>> {
    if !h.is_subgroup_of(g) {
        return Err(Error::NotASubgroup);
    }
    let mut seen_cosets: BTreeSet<Perm> = BTreeSet::new();
    let mut core_elements: Option<BTreeSet<Perm>> = None;
    for x in g.elements() {
        if seen_cosets.contains(x) {
            continue;
        }
        for m in h.elements() {
            seen_cosets.insert(m.compose(x));
        }
        let conjugate: BTreeSet<Perm> = h.conjugated_elements(x).into_iter().collect();
        core_elements = Some(match core_elements {
            None => conjugate,
            Some(acc) => acc.intersection(&conjugate).cloned().collect(),
        });
    }
    let elements = core_elements.unwrap_or_default().into_iter().collect();
    Ok(Group::subgroup_from_elements(g, elements))
}

/// Every normal subgroup of `g`, as the join-closure of the element normal
/// closures. Includes the trivial subgroup and `g` itself. Cached per group,
/// sorted canonically.
pub fn all_normals(g: &Arc<Group>) -> Vec<Arc<Group>> {
    g.caches
        .normals
        .get_or_init(|| {
            let mut by_elements: BTreeMap<Vec<Perm>, Arc<Group>> = BTreeMap::new();
            let trivial = Group::subgroup_from_elements(g, vec![g.identity()]);
            by_elements.insert(trivial.elements().to_vec(), trivial);
            for x in g.elements() {
                let ncl = normal_closure(g, std::slice::from_ref(x)).expect("element of g");
                by_elements.entry(ncl.elements().to_vec()).or_insert(ncl);
            }
            loop {
                let current: Vec<Arc<Group>> = by_elements.values().cloned().collect();
                let before = current.len();
                for i in 0..current.len() {
                    for j in i + 1..current.len() {
                        let joined = join(g, &current[i], &current[j]);
                        by_elements
                            .entry(joined.elements().to_vec())
                            .or_insert(joined);
                    }
                }
                if by_elements.len() == before {
                    break;
                }
            }
            let mut out: Vec<Arc<Group>> = by_elements.into_values().collect();
            out.sort_by(|a, b| a.canonical_cmp(b));
            debug_assert!(out.iter().all(|n| is_normal_in(n, g)));
            out
        })
        .clone()
}

/// All minimal normal subgroups of a nontrivial group.
pub fn minimal_normals(g: &Arc<Group>) -> Result<Vec<Arc<Group>>> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let normals = all_normals(g);
    let nontrivial: Vec<&Arc<Group>> = normals.iter().filter(|n| !n.is_trivial()).collect();
    let minimal: Vec<Arc<Group>> = nontrivial
        .iter()
        .filter(|n| {
            !nontrivial
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .map(|n| Arc::clone(n))
        .collect();
    Ok(minimal)
}

/// A chief series built by repeatedly selecting, in the current quotient, the
/// minimal normal subgroup whose least nontrivial element is canonically
/// smallest, and pulling it back.
pub fn chief_series(g: &Arc<Group>) -> NormalSeries {
    let mut terms = vec![Group::subgroup_from_elements(g, vec![g.identity()])];
    while terms.last().unwrap().order() < g.order() {
        let q = coset_action_quotient(g, terms.last().unwrap()).expect("terms are normal");
        let minimals = minimal_normals(&q.quotient).expect("quotient nontrivial");
        let chosen = minimals
            .iter()
            .min_by(|a, b| a.elements()[1].cmp(&b.elements()[1]))
            .expect("nontrivial quotient has a minimal normal subgroup");
        let pulled = q.preimage(chosen).expect("subgroup of quotient");
        terms.push(pulled);
    }
    let factor_orders = terms
        .windows(2)
        .map(|w| w[1].order() / w[0].order())
        .collect();
    NormalSeries {
        terms,
        factor_orders,
    }
}

fn require_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Largest normal p-subgroup.
pub fn o_p(g: &Arc<Group>, p: u64) -> Result<Arc<Group>> {
    require_prime(p)?;
    let best = all_normals(g)
        .into_iter()
        .filter(|n| n.is_p_group(p))
        .max_by(|a, b| a.canonical_cmp(b))
        .expect("trivial subgroup is a p-group");
    Ok(best)
}

/// Largest normal p'-subgroup.
pub fn o_pprime(g: &Arc<Group>, p: u64) -> Result<Arc<Group>> {
    require_prime(p)?;
    let best = all_normals(g)
        .into_iter()
        .filter(|n| n.order() as u64 % p != 0)
        .max_by(|a, b| a.canonical_cmp(b))
        .expect("trivial subgroup is a p'-group");
    Ok(best)
}

/// Fitting subgroup `F(G)`: the product of the `O_p(G)` over primes dividing
/// the order.
pub fn fitting(g: &Arc<Group>) -> Arc<Group> {
    let mut f = Group::subgroup_from_elements(g, vec![g.identity()]);
    for p in arith::prime_divisors(g.order() as u64) {
        let radical = o_p(g, p).expect("p prime");
        f = join(g, &f, &radical);
    }
    f
}

/// Second Fitting term: the preimage of `F(G/F(G))`.
pub fn fitting2(g: &Arc<Group>) -> Arc<Group> {
    let f = fitting(g);
    if f.order() == g.order() {
        return f;
    }
    let q = coset_action_quotient(g, &f).expect("F(G) is normal");
    let upstairs = fitting(&q.quotient);
    q.preimage(&upstairs).expect("subgroup of quotient")
}

fn normalizer(g: &Arc<Group>, h: &Group) -> Arc<Group> {
    let elements: Vec<Perm> = g
        .elements()
        .iter()
        .filter(|x| h.conjugated_elements(x) == h.elements())
        .cloned()
        .collect();
    Group::subgroup_from_elements(g, elements)
}

/// One Sylow p-subgroup, grown greedily: while the current p-subgroup is
/// short of the full p-part, its normaliser contains a p-element outside it,
/// and the canonically least one extends it.
pub fn sylow(g: &Arc<Group>, p: u64) -> Result<Arc<Group>> {
    require_prime(p)?;
    let target = arith::p_part(g.order() as u64, p) as usize;
    let mut current = Group::subgroup_from_elements(g, vec![g.identity()]);
    while current.order() < target {
        let norm = normalizer(g, &current);
        let extender = norm
            .elements()
            .iter()
            .find(|y| !current.contains(y) && arith::is_p_number(y.order(), p) && y.order() > 1)
            .cloned()
            .ok_or_else(|| {
                Error::Internal(format!("sylow growth stalled at order {}", current.order()))
            })?;
        let mut gens = current.generators().to_vec();
        gens.push(extender);
        current = Group::subgroup_generated(g, &gens)?;
    }
    Ok(current)
}

/// Verdict of the normal-Hall-subgroup test.
pub struct HallVerdict {
    pub holds: bool,
    pub witness: Option<Arc<Group>>,
}

/// The set of all sigma-elements, if it forms a subgroup of full sigma-part
/// order. A normal Hall sigma-subgroup, when it exists, equals this set.
pub fn sigma_element_hall(g: &Arc<Group>, sigma: &[u64]) -> Option<Arc<Group>> {
    let order = g.order() as u64;
    let target = arith::sigma_part(order, sigma) as usize;
    let members: Vec<Perm> = g
        .elements()
        .iter()
        .filter(|x| arith::prime_divisors(x.order()).iter().all(|p| sigma.contains(p)))
        .cloned()
        .collect();
    if members.len() != target {
        return None;
    }
    let closed = members
        .iter()
        .all(|x| members.iter().all(|y| members.binary_search(&x.compose(y)).is_ok()));
    if !closed {
        return None;
    }
    Some(Group::subgroup_from_elements(g, members))
}

/// Existence of a nilpotent normal Hall sigma-subgroup, by the
/// sigma-element-set criterion.
pub fn normal_hall_nilpotent(g: &Arc<Group>, sigma: &[u64]) -> HallVerdict {
    match sigma_element_hall(g, sigma) {
        Some(h) if is_nilpotent_group(&h) => HallVerdict {
            holds: true,
            witness: Some(h),
        },
        _ => HallVerdict {
            holds: false,
            witness: None,
        },
    }
}

/// Centre, computed by scanning for elements commuting with every generator.
pub fn center(g: &Arc<Group>) -> Arc<Group> {
    let elements: Vec<Perm> = g
        .elements()
        .iter()
        .filter(|x| g.generators().iter().all(|gen| x.compose(gen) == gen.compose(x)))
        .cloned()
        .collect();
    Group::subgroup_from_elements(g, elements)
}

/// Derived subgroup: the normal closure of the commutators of generator
/// pairs.
pub fn derived(g: &Arc<Group>) -> Arc<Group> {
    let mut seeds = Vec::new();
    for a in g.generators() {
        for b in g.generators() {
            let c = a.commutator(b);
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    normal_closure(g, &seeds).expect("commutators lie in g")
}

/// Frattini subgroup of a p-group: generated by all commutators and all
/// p-th powers.
pub fn frattini_of_pgroup(p_group: &Arc<Group>, p: u64) -> Result<Arc<Group>> {
    require_prime(p)?;
    if !arith::is_p_number(p_group.order() as u64, p) {
        return Err(Error::NotAPGroup(p_group.order(), p));
    }
    let mut gens: Vec<Perm> = derived(p_group).elements().to_vec();
    for x in p_group.elements() {
        gens.push(perm_pow(x, p));
    }
    gens.retain(|x| !x.is_identity());
    Group::subgroup_generated(p_group, &gens)
}

fn perm_pow(x: &Perm, k: u64) -> Perm {
    let mut acc = Perm::identity(x.degree());
    for _ in 0..k {
        acc = acc.compose(x);
    }
    acc
}

fn derived_series_reaches_trivial(g: &Arc<Group>) -> bool {
    let mut current = Arc::clone(g);
    loop {
        if current.is_trivial() {
            return true;
        }
        let next = derived(&current);
        if next.order() == current.order() {
            return false;
        }
        // Re-root the subgroup chain at the new term.
        current = Group::generate(next.generators(), next.degree(), next.order())
            .expect("derived subgroup regenerates");
    }
}

fn is_nilpotent_group(g: &Arc<Group>) -> bool {
    // Lower central series: L_1 = G, L_{k+1} = [G, L_k].
    let mut layer = Arc::clone(g);
    loop {
        if layer.is_trivial() {
            return true;
        }
        let mut seeds = Vec::new();
        for x in g.elements() {
            for y in layer.generators() {
                let c = x.commutator(y);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        seeds.sort();
        seeds.dedup();
        let next = normal_closure(g, &seeds).expect("commutators lie in g");
        if next.order() == layer.order() {
            return false;
        }
        layer = next;
    }
}

/// Per-prime structural record.
#[derive(Clone)]
pub struct PrimeReport {
    pub prime: u64,
    pub sylow: Arc<Group>,
    pub o_p: Arc<Group>,
    pub o_pprime: Arc<Group>,
    pub is_p_nilpotent: bool,
    pub is_p_soluble: bool,
    /// Number of p-layers in the alternating `O_{p'},O_p` tower; absent when
    /// the group is not p-soluble.
    pub p_length: Option<usize>,
    pub is_p_supersoluble: bool,
}

/// Structural flags and distinguished subgroups of one group.
#[derive(Clone)]
pub struct StructReport {
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_soluble: bool,
    pub is_supersoluble: bool,
    pub center: Arc<Group>,
    pub derived: Arc<Group>,
    pub fitting: Arc<Group>,
    pub fitting2: Arc<Group>,
    pub per_prime: BTreeMap<u64, PrimeReport>,
}

pub fn is_soluble(g: &Arc<Group>) -> bool {
    derived_series_reaches_trivial(g)
}

pub fn is_nilpotent(g: &Arc<Group>) -> bool {
    is_nilpotent_group(g)
}

/// Supersoluble iff every chief factor has prime order.
pub fn is_supersoluble(g: &Arc<Group>) -> bool {
    chief_series(g)
        .factor_orders
        .iter()
        .all(|&f| arith::is_prime(f as u64))
}

/// p-soluble iff every chief factor is a p-group or a p'-group.
pub fn is_p_soluble(g: &Arc<Group>, p: u64) -> bool {
    chief_series(g)
        .factor_orders
        .iter()
        .all(|&f| arith::is_p_number(f as u64, p) || f as u64 % p != 0)
}

/// p-supersoluble iff p-soluble and every p-chief factor has order exactly p.
pub fn is_p_supersoluble(g: &Arc<Group>, p: u64) -> bool {
    if !is_p_soluble(g, p) {
        return false;
    }
    chief_series(g)
        .factor_orders
        .iter()
        .all(|&f| f as u64 % p != 0 || f as u64 == p)
}

/// p-nilpotent iff a normal p-complement (normal Hall p'-subgroup) exists.
pub fn is_p_nilpotent(g: &Arc<Group>, p: u64) -> bool {
    let sigma: Vec<u64> = arith::prime_divisors(g.order() as u64)
        .into_iter()
        .filter(|&q| q != p)
        .collect();
    sigma_element_hall(g, &sigma).is_some()
}

/// Number of p-layers in the tower `1 <= O_{p'} <= O_{p'p} <= ...`; `None`
/// when `g` is not p-soluble.
pub fn p_length(g: &Arc<Group>, p: u64) -> Option<usize> {
    if !is_p_soluble(g, p) {
        return None;
    }
    let mut current = Group::subgroup_from_elements(g, vec![g.identity()]);
    let mut length = 0usize;
    while current.order() < g.order() {
        let q = coset_action_quotient(g, &current).expect("tower terms are normal");
        let pprime_radical = o_pprime(&q.quotient, p).expect("p prime");
        current = q.preimage(&pprime_radical).expect("subgroup of quotient");
        if current.order() == g.order() {
            break;
        }
        let q2 = coset_action_quotient(g, &current).expect("tower terms are normal");
        let p_radical = o_p(&q2.quotient, p).expect("p prime");
        let next = q2.preimage(&p_radical).expect("subgroup of quotient");
        if next.order() == current.order() {
            // p-solubility guarantees progress; reaching here is a bug.
            panic!("p-length tower stalled below the whole group");
        }
        length += 1;
        current = next;
    }
    Some(length)
}

/// The full structural report; computed once per group and cached by the
/// caller where needed.
pub fn predicates(g: &Arc<Group>) -> StructReport {
    let order = g.order() as u64;
    let mut per_prime = BTreeMap::new();
    for p in arith::prime_divisors(order) {
        per_prime.insert(
            p,
            PrimeReport {
                prime: p,
                sylow: sylow(g, p).expect("p prime"),
                o_p: o_p(g, p).expect("p prime"),
                o_pprime: o_pprime(g, p).expect("p prime"),
                is_p_nilpotent: is_p_nilpotent(g, p),
                is_p_soluble: is_p_soluble(g, p),
                p_length: p_length(g, p),
                is_p_supersoluble: is_p_supersoluble(g, p),
            },
        );
    }
    StructReport {
        is_abelian: g.is_abelian(),
        is_nilpotent: is_nilpotent(g),
        is_soluble: is_soluble(g),
        is_supersoluble: is_supersoluble(g),
        center: center(g),
        derived: derived(g),
        fitting: fitting(g),
        fitting2: fitting2(g),
        per_prime,
    }
}

/// The structural report, computed once per group and cached.
pub fn cached_report(g: &Arc<Group>) -> Arc<StructReport> {
    Arc::clone(g.caches.report.get_or_init(|| Arc::new(predicates(g))))
}

/// Elementary abelian: abelian with every nontrivial element of order p for
/// a single prime p.
pub fn is_elementary_abelian(g: &Arc<Group>) -> bool {
    if g.is_trivial() {
        return true;
    }
    if !g.is_abelian() {
        return false;
    }
    let orders: BTreeSet<u64> = g
        .elements()
        .iter()
        .filter(|x| !x.is_identity())
        .map(|x| x.order())
        .collect();
    orders.len() == 1 && arith::is_prime(*orders.iter().next().unwrap())
}
