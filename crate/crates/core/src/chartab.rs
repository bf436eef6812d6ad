//! Exact irreducible character tables and the vanishing machinery.
//!
//! Tables are computed by the classical modular method: class multiplication
//! coefficients are counted, the class matrices are simultaneously
//! diagonalised over a prime field `F_q` with `q ≡ 1 (mod e)` and
//! `q > 2·sqrt(|G|)` (`e` the group exponent), degrees and central characters
//! are recovered from the eigenvectors, and the exact character values are
//! lifted to `Q(zeta_e)` by discrete-Fourier inversion over the power-map
//! classes. Any degeneracy advances to the next admissible prime. The lifted
//! table is certified by the exact orthogonality relations before it is
//! returned, so a surviving table is correct by construction.

use std::sync::Arc;



use crate::arith;
use crate::cyclo::Cyc;
use crate::error::{Error, Result};
use crate::perm::{index, ClassData, Group, Perm};

/// Conjugacy class data plus the full matrix of irreducible character
/// values. Rows are characters (sorted by degree, then by canonical value
/// sequence), columns are classes in canonical order.
pub struct CharTable {
    pub classes: Arc<ClassData>,
    /// Group exponent; the conductor of every entry.
    pub exponent: u64,
    /// `values[row][class]`.
    pub values: Vec<Vec<Cyc>>,
    /// Value of each row at the identity class.
    pub degrees: Vec<u64>,
}

impl CharTable {
    pub fn class_count(&self) -> usize {
        self.classes.class_count()
    }

    pub fn row_count(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyc {
        &self.values[row][class]
    }

    /// Both orthogonality relations, checked exactly.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let order: usize = self.classes.sizes.iter().sum();
        let r = self.row_count();
        if r != self.class_count() {
            return Err(Error::Internal("row count differs from class count".into()));
        }
        let e = self.exponent;
        for i in 0..r {
            for j in 0..r {
                let mut sum = Cyc::zero(e);
                for k in 0..r {
                    let term = self.values[i][k]
                        .mul(&self.values[j][k].conj())
                        .scale(&crate::cyclo::rat_int(self.classes.sizes[k] as i64));
                    sum = sum.add(&term);
                }
                let expected = if i == j { order as i64 } else { 0 };
                if sum != Cyc::from_integer(e, expected) {
                    return Err(Error::Internal(format!("row orthogonality fails at ({i},{j})")));
                }
            }
        }
        for k in 0..r {
            for l in 0..r {
                let mut sum = Cyc::zero(e);
                for i in 0..r {
                    sum = sum.add(&self.values[i][k].mul(&self.values[i][l].conj()));
                }
                let expected = if k == l {
                    Cyc::from_integer(e, (order / self.classes.sizes[k]) as i64)
                } else {
                    Cyc::zero(e)
                };
                if sum != expected {
                    return Err(Error::Internal(format!(
                        "column orthogonality fails at ({k},{l})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Class multiplication coefficients `a[i][j][k]`: the number of ways a
/// fixed representative of class `k` factors as `x·y` with `x` in class `i`,
/// `y` in class `j`.
pub fn class_multiplication_coefficients(g: &Group, classes: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let r = classes.class_count();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    let members = classes.members();
    for i in 0..r {
        for &x_idx in &members[i] {
            let x_inv = g.elements()[x_idx].inverse();
            for k in 0..r {
                let y = x_inv.compose(&classes.reps[k]);
                let j = classes.class_of[g.element_index(&y).expect("closure")];
                a[i][j][k] += 1;
            }
        }
    }
    a
}

/// Modular arithmetic and the small linear algebra used by the splitting.
mod fp {
    #[derive(Clone, Copy)]
    pub struct F {
        pub q: u64,
    }

    impl F {
        pub fn add(&self, a: u64, b: u64) -> u64 {
            (a + b) % self.q
        }
        pub fn sub(&self, a: u64, b: u64) -> u64 {
            (a + self.q - b % self.q) % self.q
        }
        pub fn mul(&self, a: u64, b: u64) -> u64 {
            ((a as u128 * b as u128) % self.q as u128) as u64
        }
        pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
            base %= self.q;
            let mut acc = 1u64;
            while exp > 0 {
                if exp & 1 == 1 {
                    acc = self.mul(acc, base);
                }
                base = self.mul(base, base);
                exp >>= 1;
            }
            acc
        }
        pub fn inv(&self, a: u64) -> u64 {
            self.pow(a, self.q - 2)
        }
    }

    /// Basis of the null space of `m` (square), as row vectors.
    pub fn null_space(f: F, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = m.len();
        let mut a: Vec<Vec<u64>> = m.to_vec();
        let mut pivot_col_of_row = Vec::new();
        let mut row = 0usize;
        for col in 0..n {
            let Some(pivot) = (row..n).find(|&rr| a[rr][col] != 0) else {
                continue;
            };
            a.swap(row, pivot);
            let inv = f.inv(a[row][col]);
            for c in 0..n {
                a[row][c] = f.mul(a[row][c], inv);
            }
            for rr in 0..n {
                if rr != row && a[rr][col] != 0 {
                    let factor = a[rr][col];
                    for c in 0..n {
                        let t = f.mul(factor, a[row][c]);
                        a[rr][c] = f.sub(a[rr][c], t);
                    }
                }
            }
            pivot_col_of_row.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
        let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &free in &free_cols {
            let mut v = vec![0u64; n];
            v[free] = 1;
            for (r_idx, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.sub(0, a[r_idx][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant by Gaussian elimination.
    pub fn det(f: F, m: &[Vec<u64>]) -> u64 {
        let n = m.len();
        let mut a = m.to_vec();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&rr| a[rr][col] != 0) else {
                return 0;
            };
            if pivot != col {
                a.swap(col, pivot);
                det = f.sub(0, det);
            }
            det = f.mul(det, a[col][col]);
            let inv = f.inv(a[col][col]);
            for rr in col + 1..n {
                if a[rr][col] != 0 {
                    let factor = f.mul(a[rr][col], inv);
                    for c in col..n {
                        let t = f.mul(factor, a[col][c]);
                        a[rr][c] = f.sub(a[rr][c], t);
                    }
                }
            }
        }
        det
    }

    /// Expresses each column of `m·basisᵀ` in the given basis of an invariant
    /// subspace, returning the restricted matrix.
    pub fn restrict(f: F, m: &[Vec<u64>], basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = m.len();
        let k = basis.len();
        // images[t] = m * basis[t]
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|v| {
                (0..n)
                    .map(|j| {
                        let mut s = 0u64;
                        for (c, &vc) in v.iter().enumerate() {
                            s = f.add(s, f.mul(m[j][c], vc));
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        // Solve basisᵀ · x = image for each image; build augmented system.
        let mut aug: Vec<Vec<u64>> = (0..n)
            .map(|row| {
                let mut line: Vec<u64> = basis.iter().map(|v| v[row]).collect();
                line.extend(images.iter().map(|img| img[row]));
                line
            })
            .collect();
        let width = k + images.len();
        let mut row = 0usize;
        let mut pivot_rows = Vec::new();
        for col in 0..k {
            let Some(p) = (row..n).find(|&rr| aug[rr][col] != 0) else {
                continue;
            };
            aug.swap(row, p);
            let inv = f.inv(aug[row][col]);
            for c in 0..width {
                aug[row][c] = f.mul(aug[row][c], inv);
            }
            for rr in 0..n {
                if rr != row && aug[rr][col] != 0 {
                    let factor = aug[rr][col];
                    for c in 0..width {
                        let t = f.mul(factor, aug[row][c]);
                        aug[rr][c] = f.sub(aug[rr][c], t);
                    }
                }
            }
            pivot_rows.push(row);
            row += 1;
        }
        assert_eq!(row, k, "basis vectors must be independent");
        // Restricted matrix: entry (t, s) = coefficient of basis[t] in image of basis[s].
        (0..k)
            .map(|t| (0..k).map(|s| aug[t][k + s]).collect())
            .collect()
    }
}

struct DixonContext {
    order: usize,
    exponent: u64,
    sizes: Vec<usize>,
    element_orders: Vec<u64>,
    inverse_class: Vec<usize>,
    /// `power_class[k][l]` = class of `rep_k^l`, for `0 <= l < order(rep_k)`.
    power_class: Vec<Vec<usize>>,
    coefficients: Vec<Vec<Vec<u64>>>,
}

impl DixonContext {
    fn build(g: &Group, classes: &ClassData) -> DixonContext {
        let r = classes.class_count();
        let mut inverse_class = Vec::with_capacity(r);
        let mut power_class = Vec::with_capacity(r);
        let mut element_orders = Vec::with_capacity(r);
        for rep in &classes.reps {
            inverse_class
                .push(classes.class_of[g.element_index(&rep.inverse()).expect("closure")]);
            let n = rep.order();
            element_orders.push(n);
            let mut powers = Vec::with_capacity(n as usize);
            let mut acc = Perm::identity(g.degree());
            for _ in 0..n {
                powers.push(classes.class_of[g.element_index(&acc).expect("closure")]);
                acc = acc.compose(rep);
            }
            power_class.push(powers);
        }
        DixonContext {
            order: g.order(),
            exponent: classes.exponent,
            sizes: classes.sizes.clone(),
            element_orders,
            inverse_class,
            power_class,
            coefficients: class_multiplication_coefficients(g, classes),
        }
    }

    /// Ascending primes `q ≡ 1 (mod e)` with `q > 2·sqrt(|G|)`.
    fn admissible_primes(&self) -> impl Iterator<Item = u64> + '_ {
        let e = self.exponent;
        let bound = 2 * arith::isqrt(self.order as u64) + 1;
        (1u64..).map(move |k| e * k + 1).filter(move |&q| q >= bound && arith::is_prime(q))
    }

    /// One attempt of the modular method at prime `q`. `None` signals a
    /// degeneracy that the next admissible prime should resolve.
    fn attempt(&self, q: u64) -> Option<(Vec<u64>, Vec<Vec<Cyc>>)> {
        let f = fp::F { q };
        let r = self.sizes.len();
        let e = self.exponent;

        // Primitive e-th root of unity in F_q.
        let z = (2..q).find_map(|t| {
            let candidate = f.pow(t, (q - 1) / e);
            let full_order = arith::prime_divisors(e)
                .iter()
                .all(|&p| f.pow(candidate, e / p) != 1);
            (candidate != 1 || e == 1) .then_some(candidate).filter(|_| full_order)
        })?;

        // Split the common eigenspaces of the class matrices, in index order.
        let identity_basis: Vec<Vec<u64>> = (0..r)
            .map(|i| {
                let mut v = vec![0u64; r];
                v[i] = 1;
                v
            })
            .collect();
        let mut subspaces = vec![identity_basis];
        for i in 1..r {
            if subspaces.iter().all(|w| w.len() == 1) {
                break;
            }
            let matrix: Vec<Vec<u64>> = (0..r)
                .map(|j| (0..r).map(|k| self.coefficients[i][j][k] % q).collect())
                .collect();
            let mut next = Vec::new();
            for w in subspaces {
                if w.len() == 1 {
                    next.push(w);
                    continue;
                }
                let restricted = fp::restrict(f, &matrix, &w);
                let m = w.len();
                let mut found_dim = 0usize;
                for lambda in 0..q {
                    let shifted: Vec<Vec<u64>> = (0..m)
                        .map(|a| {
                            (0..m)
                                .map(|b| {
                                    if a == b {
                                        f.sub(restricted[a][b], lambda)
                                    } else {
                                        restricted[a][b]
                                    }
                                })
                                .collect()
                        })
                        .collect();
                    if fp::det(f, &shifted) != 0 {
                        continue;
                    }
                    let kernel = fp::null_space(f, &shifted);
                    if kernel.is_empty() {
                        continue;
                    }
                    found_dim += kernel.len();
                    let lifted: Vec<Vec<u64>> = kernel
                        .iter()
                        .map(|coeffs| {
                            let mut v = vec![0u64; r];
                            for (t, &c) in coeffs.iter().enumerate() {
                                for (slot, &wt) in w[t].iter().enumerate() {
                                    v[slot] = f.add(v[slot], f.mul(c, wt));
                                }
                            }
                            v
                        })
                        .collect();
                    next.push(lifted);
                    if found_dim == m {
                        break;
                    }
                }
                if found_dim != m {
                    // The restriction was not diagonalisable over F_q.
                    return None;
                }
            }
            subspaces = next;
        }
        if subspaces.len() != r || subspaces.iter().any(|w| w.len() != 1) {
            return None;
        }

        // Each surviving line is a central character mod q.
        let mut rows = Vec::with_capacity(r);
        for w in &subspaces {
            let v = &w[0];
            if v[0] == 0 {
                return None;
            }
            let norm = f.inv(v[0] % q);
            let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, norm)).collect();

            // Degree recovery: sum of omega_k * omega_{k⁻¹} / |C_k| equals
            // |G| / d² in F_q, and d is the unique candidate below sqrt(|G|).
            let mut s = 0u64;
            for k in 0..r {
                let term = f.mul(
                    f.mul(omega[k], omega[self.inverse_class[k]]),
                    f.inv(self.sizes[k] as u64 % q),
                );
                s = f.add(s, term);
            }
            let order_mod = self.order as u64 % q;
            let degree = (1..=arith::isqrt(self.order as u64))
                .find(|&d| f.mul(f.mul(d % q, d % q), s) == order_mod)?;

            // chi(g_k) mod q.
            let char_mod: Vec<u64> = (0..r)
                .map(|k| f.mul(f.mul(degree % q, omega[k]), f.inv(self.sizes[k] as u64 % q)))
                .collect();

            // Exact lift by Fourier inversion over the power classes.
            let mut row = Vec::with_capacity(r);
            for k in 0..r {
                let n = self.element_orders[k];
                let zn = f.pow(z, e / n);
                let n_inv = f.inv(n % q);
                let mut monomials: Vec<(u64, i64)> = Vec::new();
                let mut total = 0u64;
                for s_exp in 0..n {
                    let mut acc = 0u64;
                    for l in 0..n {
                        let neg_exp = (n - (l * s_exp) % n) % n;
                        let term = f.mul(
                            char_mod[self.power_class[k][l as usize]],
                            f.pow(zn, neg_exp),
                        );
                        acc = f.add(acc, term);
                    }
                    let multiplicity = f.mul(acc, n_inv);
                    if multiplicity > degree {
                        return None;
                    }
                    total += multiplicity;
                    if multiplicity > 0 {
                        monomials.push(((s_exp * (e / n)) % e, multiplicity as i64));
                    }
                }
                if total != degree {
                    return None;
                }
                row.push(Cyc::from_monomials(e, &monomials));
            }
            rows.push((degree, row));
        }

        if rows.iter().map(|(d, _)| d * d).sum::<u64>() != self.order as u64 {
            return None;
        }
        rows.sort_by(|(da, ra), (db, rb)| {
            da.cmp(db).then_with(|| {
                for (x, y) in ra.iter().zip(rb) {
                    let ord = x.canonical_cmp(y);
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
                std::cmp::Ordering::Equal
            })
        });
        let degrees = rows.iter().map(|(d, _)| *d).collect();
        let values = rows.into_iter().map(|(_, row)| row).collect();
        Some((degrees, values))
    }
}

/// The exact irreducible character table of `g`; cached per group.
pub fn character_table(g: &Arc<Group>) -> Result<Arc<CharTable>> {
    let cached = g.caches.table.get_or_init(|| {
        let classes = g.conjugacy_classes();
        let ctx = DixonContext::build(g, &classes);
        let primes: Vec<u64> = ctx.admissible_primes().take(25).collect();
        for q in primes {
            if let Some((degrees, values)) = ctx.attempt(q) {
                let table = CharTable {
                    classes: Arc::clone(&classes),
                    exponent: ctx.exponent,
                    values,
                    degrees,
                };
                return match table.verify_orthogonality() {
                    Ok(()) => Ok(Arc::new(table)),
                    Err(e) => Err(format!("table at q={q} failed certification: {e}")),
                };
            }
        }
        Err("eigenspace separation failed for all admissible primes".to_string())
    });
    cached.clone().map_err(Error::Internal)
}

/// Zero pattern of the table together with the derived vanishing sets.
pub struct VanishingProfile {
    pub classes: Arc<ClassData>,
    /// Per class: does some irreducible character vanish there?
    pub class_vanishing: Vec<bool>,
    /// Per class: row indices of the characters vanishing there.
    pub class_witnesses: Vec<Vec<usize>>,
}

/// Summary of one vanishing class.
#[derive(Debug, Clone)]
pub struct VanishingClassInfo {
    pub class_index: usize,
    pub rep: Perm,
    /// `i_G(x)`, the class size.
    pub index: usize,
    pub order: u64,
    pub is_prime_power_order: bool,
    /// Primes dividing the element order.
    pub primes: Vec<u64>,
}

impl VanishingProfile {
    pub fn is_vanishing_class(&self, class: usize) -> bool {
        self.class_vanishing[class]
    }

    /// Vanishing test for a member element.
    pub fn is_vanishing(&self, g: &Group, x: &Perm) -> Result<bool> {
        let idx = g.element_index(x).ok_or(Error::NotInGroup)?;
        Ok(self.class_vanishing[self.classes.class_of[idx]])
    }

    /// All vanishing classes with their indices and order annotations.
    pub fn vanishing_classes(&self) -> Vec<VanishingClassInfo> {
        (0..self.classes.class_count())
            .filter(|&k| self.class_vanishing[k])
            .map(|k| {
                let rep = self.classes.reps[k].clone();
                let order = rep.order();
                VanishingClassInfo {
                    class_index: k,
                    rep,
                    index: self.classes.sizes[k],
                    order,
                    is_prime_power_order: arith::is_prime_power(order),
                    primes: arith::prime_divisors(order),
                }
            })
            .collect()
    }

    /// Vanishing classes whose elements have prime power order.
    pub fn vanishing_ppo_classes(&self) -> Vec<VanishingClassInfo> {
        self.vanishing_classes()
            .into_iter()
            .filter(|c| c.is_prime_power_order)
            .collect()
    }

    /// Vanishing classes of p-regular elements.
    pub fn p_regular_vanishing_classes(&self, p: u64) -> Vec<VanishingClassInfo> {
        self.vanishing_classes()
            .into_iter()
            .filter(|c| !c.primes.contains(&p))
            .collect()
    }
}

/// Exact zero scan of the character table; cached per group.
pub fn vanishing_profile(g: &Arc<Group>) -> Result<Arc<VanishingProfile>> {
    if let Some(hit) = g.caches.vanishing.get() {
        return Ok(Arc::clone(hit));
    }
    let table = character_table(g)?;
    let r = table.class_count();
    let mut class_vanishing = vec![false; r];
    let mut class_witnesses = vec![Vec::new(); r];
    for k in 0..r {
        for row in 0..table.row_count() {
            if table.value(row, k).is_zero() {
                class_vanishing[k] = true;
                class_witnesses[k].push(row);
            }
        }
    }
    debug_assert!(!class_vanishing[0], "identity is never vanishing");
    let profile = Arc::new(VanishingProfile {
        classes: Arc::clone(&table.classes),
        class_vanishing,
        class_witnesses,
    });
    Ok(Arc::clone(g.caches.vanishing.get_or_init(|| profile)))
}

/// Vanishing is relative to the ambient group: this computes `h`'s own table
/// and scans the column of `x`.
pub fn is_vanishing_in(h: &Arc<Group>, x: &Perm) -> Result<bool> {
    if !h.contains(x) {
        return Err(Error::NotInGroup);
    }
    let profile = vanishing_profile(h)?;
    profile.is_vanishing(h, x)
}

/// True iff some irreducible character degree `d` has `|G|/d` coprime to `p`.
pub fn has_p_defect_zero(g: &Arc<Group>, p: u64) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let table = character_table(g)?;
    let order = g.order() as u64;
    Ok(table.degrees.iter().any(|&d| (order / d) % p != 0))
}

/// Derived set used by the theorem harness: indices `i_G(x)` of the
/// vanishing elements of `g` lying in `subset`, filtered by a predicate on
/// their order classification.
pub fn vanishing_indices_in_subset(
    g: &Arc<Group>,
    subset: &[&Perm],
    mut keep: impl FnMut(&crate::perm::ElementClass) -> bool,
) -> Result<Vec<(Perm, usize)>> {
    let profile = vanishing_profile(g)?;
    let mut out = Vec::new();
    for x in subset {
        if !profile.is_vanishing(g, x)? {
            continue;
        }
        let class = crate::perm::classify_element(g, x)?;
        if keep(&class) {
            out.push(((*x).clone(), index(g, x)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[&str], degree: usize) -> Arc<Group> {
        let parsed: Vec<Perm> = gens.iter().map(|s| Perm::parse(s, degree).unwrap()).collect();
        Group::generate(&parsed, degree, 20000).unwrap()
    }

    #[test]
    fn table_of_c2() {
        let c2 = group(&["(1,2)"], 2);
        let t = character_table(&c2).unwrap();
        assert_eq!(t.degrees, vec![1, 1]);
        let minus_one = Cyc::from_integer(2, -1);
        let one = Cyc::one(2);
        let rows: Vec<Vec<&Cyc>> = t.values.iter().map(|r| r.iter().collect()).collect();
        assert!(rows.contains(&vec![&one, &one]));
        assert!(rows.contains(&vec![&one, &minus_one]));
    }

    #[test]
    fn table_of_sym3() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let t = character_table(&s3).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2]);
        // Classes in canonical order: identity, transpositions, 3-cycles.
        assert_eq!(t.classes.sizes, vec![1, 3, 2]);
        let degree2 = &t.values[2];
        assert_eq!(degree2[0], Cyc::from_integer(t.exponent, 2));
        assert!(degree2[1].is_zero());
        assert_eq!(degree2[2], Cyc::from_integer(t.exponent, -1));
    }

    #[test]
    fn table_of_sym4() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let t = character_table(&s4).unwrap();
        assert_eq!(t.degrees, vec![1, 1, 2, 3, 3]);
        t.verify_orthogonality().unwrap();
    }

    #[test]
    fn table_of_trivial_group() {
        let e = Group::trivial(1);
        let t = character_table(&e).unwrap();
        assert_eq!(t.degrees, vec![1]);
        assert!(t.values[0][0].is_one());
    }

    #[test]
    fn degrees_square_sum() {
        for (gens, degree) in [
            (vec!["(1,2,3,4,5)", "(1,2,3)"], 5),
            (vec!["(1,2,3,4,5)", "(2,3,5,4)"], 5),
            (vec!["(1,2,3,4)", "(1,3)"], 4),
        ] {
            let g = group(&gens.iter().map(|s| *s).collect::<Vec<_>>(), degree);
            let t = character_table(&g).unwrap();
            let total: u64 = t.degrees.iter().map(|d| d * d).sum();
            assert_eq!(total as usize, g.order());
            t.verify_orthogonality().unwrap();
        }
    }

    #[test]
    fn vanishing_in_sym4() {
        let s4 = group(&["(1,2)", "(1,2,3,4)"], 4);
        let profile = vanishing_profile(&s4).unwrap();
        // Canonical class order: id, transpositions, 3-cycles, double
        // transpositions, 4-cycles. The double transpositions are the only
        // nonidentity non-vanishing elements.
        assert_eq!(s4.conjugacy_classes().sizes, vec![1, 6, 8, 3, 6]);
        assert_eq!(profile.class_vanishing, vec![false, true, true, false, true]);
        let t = character_table(&s4).unwrap();
        assert!(profile
            .class_witnesses
            .iter()
            .skip(1)
            .zip(&profile.class_vanishing[1..])
            .all(|(w, &v)| w.is_empty() != v));
        let _ = t;
    }

    #[test]
    fn abelian_groups_have_no_vanishing() {
        let c6 = group(&["(1,2,3,4,5,6)"], 6);
        let profile = vanishing_profile(&c6).unwrap();
        assert!(profile.class_vanishing.iter().all(|&v| !v));
        assert!(profile.vanishing_classes().is_empty());
    }

    #[test]
    fn burnside_zero_in_every_nonlinear_row() {
        for (gens, degree) in [
            (vec!["(1,2)", "(1,2,3,4)"], 4),
            (vec!["(1,2,3,4,5)", "(1,2,3)"], 5),
            (vec!["(1,2,3,4,5)", "(2,3,5,4)"], 5),
        ] {
            let g = group(&gens, degree);
            let t = character_table(&g).unwrap();
            for (row, &d) in t.degrees.iter().enumerate() {
                if d > 1 {
                    assert!(
                        t.values[row].iter().any(|v| v.is_zero()),
                        "nonlinear row {row} lacks a zero"
                    );
                }
            }
        }
    }

    #[test]
    fn defect_zero_cases() {
        let a5 = group(&["(1,2,3,4,5)", "(1,2,3)"], 5);
        assert!(has_p_defect_zero(&a5, 5).unwrap());
        assert!(has_p_defect_zero(&a5, 2).unwrap());

        let d8 = group(&["(1,2,3,4)", "(1,3)"], 4);
        assert!(!has_p_defect_zero(&d8, 2).unwrap());

        let q8 = group(&["(1,3,2,4)(5,8,6,7)", "(1,5,2,6)(3,7,4,8)"], 8);
        assert_eq!(q8.order(), 8);
        assert!(!has_p_defect_zero(&q8, 2).unwrap());
    }

    #[test]
    fn frobenius20_vanishing_indices_are_five() {
        let f20 = group(&["(1,2,3,4,5)", "(2,3,5,4)"], 5);
        let profile = vanishing_profile(&f20).unwrap();
        let vanishing = profile.vanishing_classes();
        assert!(!vanishing.is_empty());
        assert!(vanishing.iter().all(|c| c.index == 5));
    }
}
