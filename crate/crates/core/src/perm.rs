//! Permutation arithmetic and explicit small-group construction.
//!
//! Groups are held as fully enumerated, canonically sorted element lists.
//! This trades asymptotics for determinism and directness: every derived
//! object (class representatives, subgroup listings, series, reports) is
//! reproducible because the element order is fixed once and for all.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::arith;
use crate::error::{Error, Result};

/// Default ceiling on the number of elements enumerated by closure.
pub const DEFAULT_ORDER_CAP: usize = 20_000;

/// A permutation of the points `1..=degree`.
///
/// Internally 0-based: `images[i]` is the image of point `i`. Comparison and
/// ordering are lexicographic on the image table, which fixes the canonical
/// element order used everywhere else.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 0-based image table, validating bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &im in &images {
            let im = im as usize;
            if im >= n {
                return Err(Error::PointOutOfRange {
                    point: im + 1,
                    degree: n,
                });
            }
            if seen[im] {
                return Err(Error::Parse(format!("point {} repeated in image table", im + 1)));
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    /// Parses disjoint-cycle notation over the points `1..=degree`.
    ///
    /// `"(1,2)(3,4)"` is a product of cycles, `"()"` is the identity;
    /// unmentioned points are fixed.
    pub fn parse(text: &str, degree: usize) -> Result<Perm> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty permutation text".into()));
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(Error::Parse(format!(
                    "expected '(' at offset {pos}, found {:?}",
                    text[pos..].chars().next().unwrap()
                )));
            }
            let close = text[pos..]
                .find(')')
                .map(|c| pos + c)
                .ok_or_else(|| Error::Parse(format!("unclosed cycle starting at offset {pos}")))?;
            let body = &text[pos + 1..close];
            if !body.is_empty() {
                let mut cycle = Vec::new();
                for token in body.split(',') {
                    let point: usize = token
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad point token {token:?}")))?;
                    if point == 0 || point > degree {
                        return Err(Error::PointOutOfRange { point, degree });
                    }
                    if used[point - 1] {
                        return Err(Error::Parse(format!("point {point} repeated across cycles")));
                    }
                    used[point - 1] = true;
                    cycle.push(point - 1);
                }
                if cycle.len() == 1 {
                    return Err(Error::Parse(format!(
                        "cycle ({}) of length one is not allowed",
                        cycle[0] + 1
                    )));
                }
                for w in 0..cycle.len() {
                    images[cycle[w]] = cycle[(w + 1) % cycle.len()] as u32;
                }
            }
            pos = close + 1;
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image lookup.
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i as u32 == im)
    }

    /// Product under the fixed left-to-right convention: the result maps
    /// `x` to `g(f(x))` (apply `self` first, then `g`).
    pub fn compose(&self, g: &Perm) -> Perm {
        assert_eq!(self.degree(), g.degree(), "degree mismatch in composition");
        Perm {
            images: self.images.iter().map(|&im| g.images[im as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize] = i as u32;
        }
        Perm { images }
    }

    /// `g^{-1} * self * g` under the left-to-right convention.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().compose(self).compose(g)
    }

    /// `self^{-1} g^{-1} self g`.
    pub fn commutator(&self, g: &Perm) -> Perm {
        self.inverse().compose(&g.inverse()).compose(self).compose(g)
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles_including_fixed()
            .iter()
            .fold(1u64, |acc, c| arith::lcm(acc, c.len() as u64))
    }

    fn cycles_including_fixed(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.image(start);
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.image(next);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Nontrivial cycles, each starting at its least point, ordered by least
    /// point. This is the canonical form rendered by `Display`.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.cycles_including_fixed()
            .into_iter()
            .filter(|c| c.len() > 1)
            .collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, point) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", point + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Conjugacy class data of a group: canonical minimal representatives,
/// class sizes, the element-to-class map, and the group exponent.
#[derive(Debug, Clone)]
pub struct ClassData {
    pub reps: Vec<Perm>,
    pub sizes: Vec<usize>,
    /// Class index of each element, aligned with the group's canonical
    /// element order.
    pub class_of: Vec<usize>,
    /// lcm of the element orders.
    pub exponent: u64,
}

impl ClassData {
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// Element indices of each class, reconstructed from `class_of`.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.class_count()];
        for (idx, &c) in self.class_of.iter().enumerate() {
            members[c].push(idx);
        }
        members
    }
}

#[derive(Default)]
pub(crate) struct Caches {
    classes: OnceLock<Arc<ClassData>>,
    pub(crate) normals: OnceLock<Vec<Arc<Group>>>,
    pub(crate) table: OnceLock<std::result::Result<Arc<crate::chartab::CharTable>, String>>,
    pub(crate) vanishing: OnceLock<Arc<crate::chartab::VanishingProfile>>,
    pub(crate) report: OnceLock<Arc<crate::structure::StructReport>>,
}

/// A finite permutation group, fully enumerated.
///
/// `elements` is closed under composition and inverse, contains the identity,
/// and is sorted lexicographically on image tables. Groups are immutable
/// after construction; derived data is built into per-group caches on first
/// use, so shared references are safe for concurrent reads.
pub struct Group {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    parent: Option<Arc<Group>>,
    pub(crate) caches: Caches,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}
impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(degree={}, order={})", self.degree, self.order())
    }
}

impl Group {
    /// Full element enumeration of `<gens>` by breadth-first closure.
    ///
    /// Fails with an explicit cap error if the closure exceeds `cap`.
    pub fn generate(gens: &[Perm], degree: usize, cap: usize) -> Result<Arc<Group>> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::Parse(format!(
                    "generator {g} has degree {} instead of {degree}",
                    g.degree()
                )));
            }
        }
        let elements = closure(gens, &[Perm::identity(degree)], cap)?;
        let mut generators: Vec<Perm> = gens.to_vec();
        if generators.is_empty() {
            generators.push(Perm::identity(degree));
        }
        Ok(Arc::new(Group {
            degree,
            generators,
            elements,
            parent: None,
            caches: Caches::default(),
        }))
    }

    pub fn trivial(degree: usize) -> Arc<Group> {
        Group::generate(&[], degree, 1).expect("trivial group")
    }

    /// Wraps an already-closed element set as a subgroup of `parent`.
    ///
    /// The element list is sorted and a small generating set is extracted
    /// greedily in canonical order.
    pub fn subgroup_from_elements(parent: &Arc<Group>, mut elements: Vec<Perm>) -> Arc<Group> {
        elements.sort();
        elements.dedup();
        debug_assert!(elements.iter().all(|e| parent.contains(e)));
        let generators = small_generating_set(&elements, parent.degree);
        Arc::new(Group {
            degree: parent.degree,
            generators,
            elements,
            parent: Some(Arc::clone(parent)),
            caches: Caches::default(),
        })
    }

    /// Subgroup of `parent` generated by `gens`.
    pub fn subgroup_generated(parent: &Arc<Group>, gens: &[Perm]) -> Result<Arc<Group>> {
        for g in gens {
            if !parent.contains(g) {
                return Err(Error::NotInGroup);
            }
        }
        let elements = closure(gens, &[Perm::identity(parent.degree)], parent.order())?;
        Ok(Arc::new(Group {
            degree: parent.degree,
            generators: if gens.is_empty() {
                vec![Perm::identity(parent.degree)]
            } else {
                gens.to_vec()
            },
            elements,
            parent: Some(Arc::clone(parent)),
            caches: Caches::default(),
        }))
    }

    pub(crate) fn from_raw_parts(
        degree: usize,
        generators: Vec<Perm>,
        mut elements: Vec<Perm>,
    ) -> Arc<Group> {
        elements.sort();
        elements.dedup();
        Arc::new(Group {
            degree,
            generators,
            elements,
            parent: None,
            caches: Caches::default(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn parent(&self) -> Option<&Arc<Group>> {
        self.parent.as_ref()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn contains(&self, x: &Perm) -> bool {
        x.degree() == self.degree && self.elements.binary_search(x).is_ok()
    }

    pub fn element_index(&self, x: &Perm) -> Option<usize> {
        if x.degree() != self.degree {
            return None;
        }
        self.elements.binary_search(x).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    /// Abelian iff the generators pairwise commute.
    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// True when every element has `p`-power order.
    pub fn is_p_group(&self, p: u64) -> bool {
        self.elements.iter().all(|x| arith::is_p_number(x.order(), p))
    }

    /// Deterministic comparison for subgroup listings: by order, then by the
    /// canonical element sequence.
    pub fn canonical_cmp(&self, other: &Group) -> std::cmp::Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }

    /// Every group axiom re-verified element-wise; used by validation paths
    /// and tests.
    pub fn verify_group_axioms(&self) -> Result<()> {
        if !self.contains(&self.identity()) {
            return Err(Error::Internal("identity missing".into()));
        }
        for x in &self.elements {
            if !self.contains(&x.inverse()) {
                return Err(Error::Internal(format!("inverse of {x} missing")));
            }
            for y in &self.elements {
                if !self.contains(&x.compose(y)) {
                    return Err(Error::Internal(format!("product {x}*{y} escapes the set")));
                }
            }
        }
        for g in &self.generators {
            if !self.contains(g) {
                return Err(Error::Internal(format!("generator {g} outside element set")));
            }
        }
        if let Some(parent) = &self.parent {
            if !self.is_subgroup_of(parent) {
                return Err(Error::NotASubgroup);
            }
        }
        Ok(())
    }

    /// Conjugacy classes by conjugation orbits; cached.
    pub fn conjugacy_classes(&self) -> Arc<ClassData> {
        Arc::clone(self.caches.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut reps = Vec::new();
            let mut sizes = Vec::new();
            for start in 0..n {
                if class_of[start] != usize::MAX {
                    continue;
                }
                let class_idx = reps.len();
                // Orbit of the conjugation action, expanded by generators.
                let mut queue = VecDeque::from([start]);
                class_of[start] = class_idx;
                let mut size = 0usize;
                while let Some(idx) = queue.pop_front() {
                    size += 1;
                    let x = &self.elements[idx];
                    for g in &self.generators {
                        let y = x.conjugate_by(g);
                        let yi = self.element_index(&y).expect("conjugate stays in group");
                        if class_of[yi] == usize::MAX {
                            class_of[yi] = class_idx;
                            queue.push_back(yi);
                        }
                    }
                }
                reps.push(self.elements[start].clone());
                sizes.push(size);
            }
            let exponent = self
                .elements
                .iter()
                .fold(1u64, |acc, x| arith::lcm(acc, x.order()));
            Arc::new(ClassData {
                reps,
                sizes,
                class_of,
                exponent,
            })
        }))
    }

    /// Class index of `x`, if `x` is a member.
    pub fn class_index_of(&self, x: &Perm) -> Option<usize> {
        let idx = self.element_index(x)?;
        Some(self.conjugacy_classes().class_of[idx])
    }

    /// Set of elements of this group conjugated by `g`.
    pub fn conjugated_elements(&self, g: &Perm) -> Vec<Perm> {
        let mut out: Vec<Perm> = self.elements.iter().map(|x| x.conjugate_by(g)).collect();
        out.sort();
        out
    }
}

/// Greedy small generating set: walk the canonical order, keep an element
/// whenever it enlarges the generated subgroup.
fn small_generating_set(elements: &[Perm], degree: usize) -> Vec<Perm> {
    if elements.len() <= 1 {
        return vec![Perm::identity(degree)];
    }
    let mut gens: Vec<Perm> = Vec::new();
    let mut generated = vec![Perm::identity(degree)];
    for x in elements {
        if generated.binary_search(x).is_ok() {
            continue;
        }
        gens.push(x.clone());
        generated = closure(&gens, &[Perm::identity(degree)], elements.len())
            .expect("closure within known subgroup");
        if generated.len() == elements.len() {
            break;
        }
    }
    gens
}

/// Breadth-first multiplicative closure of `seed ∪ gens`, capped.
fn closure(gens: &[Perm], seed: &[Perm], cap: usize) -> Result<Vec<Perm>> {
    let mut set: BTreeSet<Perm> = seed.iter().cloned().collect();
    let mut queue: VecDeque<Perm> = set.iter().cloned().collect();
    for g in gens {
        if set.insert(g.clone()) {
            queue.push_back(g.clone());
        }
    }
    if set.len() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if set.insert(y.clone()) {
                if set.len() > cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
                queue.push_back(y);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Centralizer `{g in G : gx = xg}` as a subgroup with parent `G`.
pub fn centralizer(group: &Arc<Group>, x: &Perm) -> Result<Arc<Group>> {
    if !group.contains(x) {
        return Err(Error::NotInGroup);
    }
    let elements: Vec<Perm> = group
        .elements()
        .iter()
        .filter(|g| g.compose(x) == x.compose(g))
        .cloned()
        .collect();
    Ok(Group::subgroup_from_elements(group, elements))
}

/// Index `i_G(x) = |G : C_G(x)|`, the size of the conjugacy class of `x`.
pub fn index(group: &Group, x: &Perm) -> Result<usize> {
    if !group.contains(x) {
        return Err(Error::NotInGroup);
    }
    let centralizer_order = group
        .elements()
        .iter()
        .filter(|g| g.compose(x) == x.compose(g))
        .count();
    Ok(group.order() / centralizer_order)
}

/// Order-theoretic classification of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClass {
    pub order: u64,
    /// The identity (order 1) is classified as NOT of prime power order, so
    /// "prime power order element" always means a nontrivial one.
    pub is_prime_power_order: bool,
    /// Primes dividing the order.
    pub p_part_primes: Vec<u64>,
}

impl ElementClass {
    pub fn is_p_regular(&self, p: u64) -> bool {
        !self.p_part_primes.contains(&p)
    }

    pub fn is_p_element(&self, p: u64) -> bool {
        arith::is_p_number(self.order, p)
    }

    /// Order's primes all lie in `sigma`.
    pub fn is_sigma_element(&self, sigma: &[u64]) -> bool {
        self.p_part_primes.iter().all(|p| sigma.contains(p))
    }
}

pub fn classify_element(group: &Group, x: &Perm) -> Result<ElementClass> {
    if !group.contains(x) {
        return Err(Error::NotInGroup);
    }
    let order = x.order();
    Ok(ElementClass {
        order,
        is_prime_power_order: arith::is_prime_power(order),
        p_part_primes: arith::prime_divisors(order),
    })
}

/// The quotient `G/N` realised as the permutation group induced by `G`
/// acting on the right cosets of `N`, together with the natural projection.
pub struct CosetQuotient {
    pub quotient: Arc<Group>,
    source: Arc<Group>,
    normal: Arc<Group>,
    /// Canonical (minimal) representative of each coset.
    coset_reps: Vec<Perm>,
    /// Coset index of each element of the source group.
    coset_of_element: Vec<usize>,
}

impl CosetQuotient {
    pub fn source(&self) -> &Arc<Group> {
        &self.source
    }

    pub fn normal(&self) -> &Arc<Group> {
        &self.normal
    }

    pub fn coset_count(&self) -> usize {
        self.coset_reps.len()
    }

    /// Image of `x` under the natural epimorphism.
    pub fn project(&self, x: &Perm) -> Result<Perm> {
        if !self.source.contains(x) {
            return Err(Error::NotInGroup);
        }
        let images = self
            .coset_reps
            .iter()
            .map(|rep| {
                let moved = rep.compose(x);
                let idx = self.source.element_index(&moved).expect("closure");
                self.coset_of_element[idx] as u32
            })
            .collect();
        Ok(Perm { images })
    }

    /// Image of a subgroup: the projections of its elements, deduplicated.
    pub fn project_subgroup(&self, h: &Group) -> Result<Arc<Group>> {
        let mut elements = Vec::with_capacity(h.order());
        for x in h.elements() {
            elements.push(self.project(x)?);
        }
        Ok(Group::subgroup_from_elements(&self.quotient, elements))
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, sub: &Group) -> Result<Arc<Group>> {
        let mut elements = Vec::new();
        for (idx, x) in self.source.elements().iter().enumerate() {
            let _ = idx;
            let image = self.project(x)?;
            if sub.contains(&image) {
                elements.push(x.clone());
            }
        }
        Ok(Group::subgroup_from_elements(&self.source, elements))
    }
}

/// Checks `N` normal in `G` by conjugating its element set with every
/// generator of `G`.
pub fn is_normal_in(n: &Group, g: &Group) -> bool {
    if !n.is_subgroup_of(g) {
        return false;
    }
    g.generators()
        .iter()
        .all(|gen| n.conjugated_elements(gen) == n.elements())
}

pub fn coset_action_quotient(group: &Arc<Group>, normal: &Arc<Group>) -> Result<CosetQuotient> {
    if !normal.is_subgroup_of(group) {
        return Err(Error::NotASubgroup);
    }
    if !is_normal_in(normal, group) {
        return Err(Error::NotNormal);
    }
    let n = group.order();
    let mut coset_of_element = vec![usize::MAX; n];
    let mut coset_reps = Vec::new();
    for idx in 0..n {
        if coset_of_element[idx] != usize::MAX {
            continue;
        }
        let coset_idx = coset_reps.len();
        let x = &group.elements()[idx];
        for h in normal.elements() {
            let member = h.compose(x);
            let mi = group.element_index(&member).expect("closure");
            coset_of_element[mi] = coset_idx;
        }
        // idx is minimal in its coset: every earlier element is assigned.
        coset_reps.push(x.clone());
    }

    let quotient_degree = coset_reps.len();
    let mut images: BTreeSet<Perm> = BTreeSet::new();
    let mut quotient_gens = Vec::new();
    let project_raw = |x: &Perm| -> Perm {
        let images = coset_reps
            .iter()
            .map(|rep| {
                let moved = rep.compose(x);
                let idx = group.element_index(&moved).expect("closure");
                coset_of_element[idx] as u32
            })
            .collect();
        Perm { images }
    };
    for x in group.elements() {
        images.insert(project_raw(x));
    }
    for g in group.generators() {
        let img = project_raw(g);
        if !quotient_gens.contains(&img) {
            quotient_gens.push(img);
        }
    }
    if images.len() * normal.order() != group.order() {
        return Err(Error::Internal(format!(
            "coset action produced {} images for index {}",
            images.len(),
            group.order() / normal.order()
        )));
    }
    let quotient = Group::from_raw_parts(
        quotient_degree,
        quotient_gens,
        images.into_iter().collect(),
    );
    Ok(CosetQuotient {
        quotient,
        source: Arc::clone(group),
        normal: Arc::clone(normal),
        coset_reps,
        coset_of_element,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> Arc<Group> {
        let a = Perm::parse("(1,2)", 3).unwrap();
        let b = Perm::parse("(1,2,3)", 3).unwrap();
        Group::generate(&[a, b], 3, 100).unwrap()
    }

    fn sym4() -> Arc<Group> {
        let a = Perm::parse("(1,2)", 4).unwrap();
        let b = Perm::parse("(1,2,3,4)", 4).unwrap();
        Group::generate(&[a, b], 4, 100).unwrap()
    }

    #[test]
    fn parse_identity_and_cycles() {
        let id = Perm::parse("()", 4).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.degree(), 4);

        let cced = Perm::parse("(1,2,3)", 3).unwrap();
        assert_eq!(cced.images, vec![1, 2, 0]);

        let d = Perm::parse("(1,2)(3,4)", 5).unwrap();
        assert_eq!(d.images, vec![1, 0, 3, 2, 4]);
    }

    #[test]
    fn parse_errors_name_the_offender() {
        let err = Perm::parse("(1,7)", 6).unwrap_err();
        assert!(matches!(err, Error::PointOutOfRange { point: 7, degree: 6 }));
        let err = Perm::parse("(1,2)(2,3)", 4).unwrap_err();
        assert!(err.to_string().contains("point 2 repeated"));
        let err = Perm::parse("(1,x)", 4).unwrap_err();
        assert!(err.to_string().contains("\"x\""));
        assert!(Perm::parse("1,2", 4).is_err());
    }

    #[test]
    fn render_roundtrip() {
        for text in ["()", "(1,2)", "(1,2,3)(4,5)", "(2,4)(3,6,5)"] {
            let p = Perm::parse(text, 6).unwrap();
            assert_eq!(Perm::parse(&p.to_string(), 6).unwrap(), p);
        }
    }

    #[test]
    fn compose_convention_left_to_right() {
        let f = Perm::parse("(1,2)", 3).unwrap();
        let g = Perm::parse("(2,3)", 3).unwrap();
        // point 1: f sends 1 to 2, then g sends 2 to 3.
        assert_eq!(f.compose(&g), Perm::parse("(1,3,2)", 3).unwrap());

        let any = Perm::parse("(1,3)", 3).unwrap();
        assert_eq!(any.compose(&Perm::identity(3)), any);

        let a = Perm::parse("(1,2,3)", 3).unwrap();
        let b = Perm::parse("(1,3,2)", 3).unwrap();
        assert!(a.compose(&b).is_identity());
    }

    #[test]
    #[should_panic(expected = "degree mismatch")]
    fn compose_degree_mismatch_panics() {
        let f = Perm::identity(3);
        let g = Perm::identity(4);
        let _ = f.compose(&g);
    }

    #[test]
    fn generate_small_groups() {
        assert_eq!(sym3().order(), 6);
        let c5 = Group::generate(&[Perm::parse("(1,2,3,4,5)", 5).unwrap()], 5, 100).unwrap();
        assert_eq!(c5.order(), 5);
        sym3().verify_group_axioms().unwrap();
    }

    #[test]
    fn generate_cap_is_explicit() {
        let err = Group::generate(
            &[
                Perm::parse("(1,2)", 4).unwrap(),
                Perm::parse("(1,2,3,4)", 4).unwrap(),
            ],
            4,
            10,
        )
        .unwrap_err();
        assert!(matches!(err, Error::OrderCapExceeded { cap: 10 }));
    }

    #[test]
    fn sym4_classes() {
        let g = sym4();
        let classes = g.conjugacy_classes();
        assert_eq!(classes.class_count(), 5);
        let mut sizes = classes.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(classes.sizes.iter().sum::<usize>(), 24);
        // Identity class first, exponent is 12.
        assert!(classes.reps[0].is_identity());
        assert_eq!(classes.exponent, 12);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let c6 = Group::generate(&[Perm::parse("(1,2,3,4,5,6)", 6).unwrap()], 6, 100).unwrap();
        let classes = c6.conjugacy_classes();
        assert_eq!(classes.class_count(), 6);
        assert!(classes.sizes.iter().all(|&s| s == 1));
    }

    #[test]
    fn frobenius20_classes() {
        let a = Perm::parse("(1,2,3,4,5)", 5).unwrap();
        let b = Perm::parse("(2,3,5,4)", 5).unwrap();
        let g = Group::generate(&[a, b.clone()], 5, 100).unwrap();
        assert_eq!(g.order(), 20);
        let classes = g.conjugacy_classes();
        assert_eq!(classes.class_count(), 5);
        assert_eq!(classes.sizes.iter().sum::<usize>(), 20);
        // Order-4 element has centralizer of order 4, hence index 5.
        let c = centralizer(&g, &b).unwrap();
        assert_eq!(c.order(), 4);
        assert_eq!(index(&g, &b).unwrap(), 5);
    }

    #[test]
    fn centralizer_and_index() {
        let g = sym3();
        let rot = Perm::parse("(1,2,3)", 3).unwrap();
        let c = centralizer(&g, &rot).unwrap();
        assert_eq!(c.order(), 3);
        assert!(c.parent().is_some());

        assert_eq!(centralizer(&g, &g.identity()).unwrap().order(), 6);
        assert_eq!(index(&g, &g.identity()).unwrap(), 1);

        let s4 = sym4();
        assert_eq!(index(&s4, &Perm::parse("(1,2)", 4).unwrap()).unwrap(), 6);

        let outside = Perm::parse("(1,2)", 4).unwrap();
        assert!(matches!(index(&sym3(), &Perm::identity(4)), Err(Error::NotInGroup)));
        assert!(centralizer(&s4, &outside).is_ok());
    }

    #[test]
    fn classify_elements() {
        let s5 = Group::generate(
            &[
                Perm::parse("(1,2)", 5).unwrap(),
                Perm::parse("(1,2,3,4,5)", 5).unwrap(),
            ],
            5,
            200,
        )
        .unwrap();
        let id = classify_element(&s5, &Perm::identity(5)).unwrap();
        assert_eq!(id.order, 1);
        assert!(!id.is_prime_power_order);

        let x = Perm::parse("(1,2)(3,4,5)", 5).unwrap();
        let c = classify_element(&s5, &x).unwrap();
        assert_eq!(c.order, 6);
        assert!(!c.is_prime_power_order);
        assert!(!c.is_p_regular(2));
        assert!(c.is_p_regular(5));

        let y = Perm::parse("(1,2,3,4)", 5).unwrap();
        let cy = classify_element(&s5, &y).unwrap();
        assert_eq!(cy.order, 4);
        assert!(cy.is_prime_power_order);
        assert!(!cy.is_p_regular(2));
    }

    #[test]
    fn index_times_centralizer_is_order() {
        let g = sym4();
        for x in g.elements() {
            let c = centralizer(&g, x).unwrap();
            assert_eq!(index(&g, x).unwrap() * c.order(), g.order());
        }
    }

    #[test]
    fn coset_action_quotients() {
        let s4 = sym4();
        let a4 = Group::subgroup_generated(
            &s4,
            &[
                Perm::parse("(1,2,3)", 4).unwrap(),
                Perm::parse("(1,2)(3,4)", 4).unwrap(),
            ],
        )
        .unwrap();
        let q = coset_action_quotient(&s4, &a4).unwrap();
        assert_eq!(q.quotient.order(), 2);

        let v4 = Group::subgroup_generated(
            &s4,
            &[
                Perm::parse("(1,2)(3,4)", 4).unwrap(),
                Perm::parse("(1,3)(2,4)", 4).unwrap(),
            ],
        )
        .unwrap();
        let q = coset_action_quotient(&s4, &v4).unwrap();
        assert_eq!(q.quotient.order(), 6);
        assert!(!q.quotient.is_abelian());

        let whole = coset_action_quotient(&s4, &s4).unwrap();
        assert_eq!(whole.quotient.order(), 1);

        // Non-normal subgroup is rejected.
        let c2 = Group::subgroup_generated(&s4, &[Perm::parse("(1,2)", 4).unwrap()]).unwrap();
        assert!(matches!(coset_action_quotient(&s4, &c2), Err(Error::NotNormal)));
    }

    #[test]
    fn projection_is_homomorphism_with_kernel_n() {
        let s4 = sym4();
        let v4 = Group::subgroup_generated(
            &s4,
            &[
                Perm::parse("(1,2)(3,4)", 4).unwrap(),
                Perm::parse("(1,3)(2,4)", 4).unwrap(),
            ],
        )
        .unwrap();
        let q = coset_action_quotient(&s4, &v4).unwrap();
        for x in s4.generators() {
            for y in s4.generators() {
                let lhs = q.project(&x.compose(y)).unwrap();
                let rhs = q.project(x).unwrap().compose(&q.project(y).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
        let kernel: Vec<&Perm> = s4
            .elements()
            .iter()
            .filter(|x| q.project(x).unwrap().is_identity())
            .collect();
        assert_eq!(kernel.len(), v4.order());
        assert!(kernel.iter().all(|x| v4.contains(x)));
    }
}
