//! Verification support: a brute-force character table derived by exact
//! eigen-decomposition of the full class algebra over `Q(zeta_e)`.
//!
//! This is the independent oracle the test suites compare against the
//! production table. It never runs in the production pipeline, and it shares
//! nothing with it beyond the conjugacy class data: class multiplication
//! coefficients are recounted here, and the common eigenvectors of the class
//! matrices are found by exact cyclotomic null-space computation instead of
//! the modular route.
//!
//! Eigenvalues are drawn from a complete finite candidate set: an eigenvalue
//! of the `i`-th class matrix has the form `|C_i| * chi(g_i) / d`, where
//! `chi(g_i)` is a sum of exactly `d` roots of unity of order dividing
//! `o(g_i)`, `d` divides `|G|`, and `d^2 <= |G| - r + 1`. Candidates are
//! pre-filtered through the characteristic polynomial of the restricted
//! matrix, computed division-free, so only genuine eigenvalues reach the
//! kernel computation.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Zero};

use crate::arith;
use crate::chartab::CharTable;
use crate::cyclo::{rat_int, Cyc, Rational};
use crate::perm::Group;

/// Multiplicative inverse in `Q(zeta_e)`, via the multiplication matrix of
/// `a` in the power basis and a rational linear solve.
pub fn cyc_inv(a: &Cyc) -> Option<Cyc> {
    if a.is_zero() {
        return None;
    }
    let e = a.conductor();
    let dim = a.coeffs().len();
    // Column j holds the coordinates of a * zeta^j.
    let mut columns = Vec::with_capacity(dim);
    let mut power = Cyc::one(e);
    let zeta = Cyc::root_of_unity(e, 1).expect("positive conductor");
    for _ in 0..dim {
        columns.push(a.mul(&power).coeffs().to_vec());
        power = power.mul(&zeta);
    }
    // Solve M x = e_0 by Gaussian elimination over Q.
    let mut aug: Vec<Vec<Rational>> = (0..dim)
        .map(|row| {
            let mut line: Vec<Rational> = columns.iter().map(|c| c[row].clone()).collect();
            line.push(if row == 0 {
                Rational::one()
            } else {
                Rational::zero()
            });
            line
        })
        .collect();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].clone();
        for c in col..=dim {
            let v = &aug[col][c] / &inv;
            aug[col][c] = v;
        }
        for r in 0..dim {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in col..=dim {
                    let v = &aug[r][c] - &factor * &aug[col][c];
                    aug[r][c] = v;
                }
            }
        }
    }
    let mut out = Cyc::zero(e);
    let mut power = Cyc::one(e);
    for row in aug.iter().take(dim) {
        out = out.add(&power.scale(&row[dim]));
        power = power.mul(&zeta);
    }
    debug_assert!(out.mul(a).is_one());
    Some(out)
}

/// All distinct sums of multisets of size `d` of `k`-th roots of unity,
/// expressed at conductor `e` (so `k` must divide `e`).
fn root_sums(e: u64, k: u64, d: u64, memo: &mut BTreeMap<(u64, u64), Vec<Cyc>>) -> Vec<Cyc> {
    if let Some(hit) = memo.get(&(k, d)) {
        return hit.clone();
    }
    let mut seen: BTreeMap<Vec<Rational>, Cyc> = BTreeMap::new();
    let roots: Vec<Cyc> = (0..k)
        .map(|j| Cyc::root_of_unity(e, (j * (e / k)) as i64).expect("positive conductor"))
        .collect();
    // Multisets as non-decreasing index sequences.
    fn rec(
        roots: &[Cyc],
        start: usize,
        remaining: u64,
        acc: &Cyc,
        seen: &mut BTreeMap<Vec<Rational>, Cyc>,
    ) {
        if remaining == 0 {
            seen.entry(acc.coeffs().to_vec()).or_insert_with(|| acc.clone());
            return;
        }
        for j in start..roots.len() {
            rec(roots, j, remaining - 1, &acc.add(&roots[j]), seen);
        }
    }
    rec(&roots, 0, d, &Cyc::zero(e), &mut seen);
    let out: Vec<Cyc> = seen.into_values().collect();
    memo.insert((k, d), out.clone());
    out
}

/// Candidate eigenvalues of the `i`-th class matrix. For a central class the
/// scalar `|C_i| / d` cancels against the sum of `d` equal roots, so the
/// candidates collapse to single roots of unity.
fn eigenvalue_candidates(
    e: u64,
    class_size: usize,
    rep_order: u64,
    degrees: &[u64],
    memo: &mut BTreeMap<(u64, u64), Vec<Cyc>>,
) -> Vec<Cyc> {
    let mut seen: BTreeMap<Vec<Rational>, Cyc> = BTreeMap::new();
    if class_size == 1 {
        for j in 0..rep_order {
            let root = Cyc::root_of_unity(e, (j * (e / rep_order)) as i64).expect("conductor");
            seen.entry(root.coeffs().to_vec()).or_insert(root);
        }
    } else {
        for &d in degrees {
            let scale = BigRational::new(BigInt::from(class_size), BigInt::from(d));
            for sum in root_sums(e, rep_order, d, memo) {
                let candidate = sum.scale(&scale);
                seen.entry(candidate.coeffs().to_vec()).or_insert(candidate);
            }
        }
    }
    seen.into_values().collect()
}

type CycMatrix = Vec<Vec<Cyc>>;

fn mat_mul(a: &CycMatrix, b: &CycMatrix, e: u64) -> CycMatrix {
    let n = a.len();
    let mut out = vec![vec![Cyc::zero(e); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j]));
            }
        }
    }
    out
}

/// Characteristic polynomial `det(xI - A)` by the Faddeev-LeVerrier
/// recursion; only divisions by rational integers occur.
fn characteristic_polynomial(a: &CycMatrix, e: u64) -> Vec<Cyc> {
    let m = a.len();
    let mut coeffs = vec![Cyc::zero(e); m + 1];
    coeffs[m] = Cyc::one(e);
    let mut aux: CycMatrix = vec![vec![Cyc::zero(e); m]; m];
    for k in 1..=m {
        // aux <- A * aux + coeff_{m-k+1} * I
        let mut next = mat_mul(a, &aux, e);
        for i in 0..m {
            next[i][i] = next[i][i].add(&coeffs[m - k + 1]);
        }
        aux = next;
        let product = mat_mul(a, &aux, e);
        let mut trace = Cyc::zero(e);
        for i in 0..m {
            trace = trace.add(&product[i][i]);
        }
        coeffs[m - k] = trace.scale(&BigRational::new(BigInt::from(-1), BigInt::from(k as i64)));
    }
    coeffs
}

fn poly_eval(coeffs: &[Cyc], x: &Cyc, e: u64) -> Cyc {
    let mut acc = Cyc::zero(e);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Null space basis of a square cyclotomic matrix, by Gaussian elimination
/// over the field `Q(zeta_e)`.
fn null_space(matrix: &CycMatrix, e: u64) -> Vec<Vec<Cyc>> {
    let n = matrix.len();
    let mut a = matrix.clone();
    let mut pivot_cols = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let Some(pivot) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, pivot);
        let inv = cyc_inv(&a[row][col]).expect("pivot is nonzero");
        for c in 0..n {
            a[row][c] = a[row][c].mul(&inv);
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..n {
                    let t = factor.mul(&a[row][c]);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    free_cols
        .iter()
        .map(|&free| {
            let mut v = vec![Cyc::zero(e); n];
            v[free] = Cyc::one(e);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = a[r][free].neg();
            }
            v
        })
        .collect()
}

/// Restriction of an integer matrix to an invariant subspace with cyclotomic
/// basis vectors: solve `basis · A = M · basis` column by column.
fn restrict(m: &[Vec<u64>], basis: &[Vec<Cyc>], e: u64) -> CycMatrix {
    let n = m.len();
    let k = basis.len();
    let images: Vec<Vec<Cyc>> = basis
        .iter()
        .map(|v| {
            (0..n)
                .map(|j| {
                    let mut s = Cyc::zero(e);
                    for (c, vc) in v.iter().enumerate() {
                        if m[j][c] != 0 && !vc.is_zero() {
                            s = s.add(&vc.scale(&rat_int(m[j][c] as i64)));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect();
    // Augmented elimination in Q(zeta_e).
    let width = k + images.len();
    let mut aug: Vec<Vec<Cyc>> = (0..n)
        .map(|row| {
            let mut line: Vec<Cyc> = basis.iter().map(|v| v[row].clone()).collect();
            line.extend(images.iter().map(|img| img[row].clone()));
            line
        })
        .collect();
    let mut row = 0usize;
    for col in 0..k {
        let pivot = (row..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("basis has full rank");
        aug.swap(row, pivot);
        let inv = cyc_inv(&aug[row][col]).expect("pivot nonzero");
        for c in 0..width {
            aug[row][c] = aug[row][c].mul(&inv);
        }
        for r in 0..n {
            if r != row && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                for c in 0..width {
                    let t = factor.mul(&aug[row][c]);
                    aug[r][c] = aug[r][c].sub(&t);
                }
            }
        }
        row += 1;
    }
    (0..k)
        .map(|t| (0..k).map(|s| aug[t][k + s].clone()).collect())
        .collect()
}

/// The exact character table of `g` computed through the class algebra over
/// `Q(zeta_e)`. Panics on internal inconsistency: this is test support, and
/// an inconsistency is a failed test.
pub fn class_algebra_character_table(g: &Arc<Group>) -> CharTable {
    let classes = g.conjugacy_classes();
    let r = classes.class_count();
    let e = classes.exponent;
    let order = g.order();

    // Class multiplication coefficients, recounted locally.
    let members = classes.members();
    let mut coefficients = vec![vec![vec![0u64; r]; r]; r];
    for i in 0..r {
        for &x_idx in &members[i] {
            let x_inv = g.elements()[x_idx].inverse();
            for k in 0..r {
                let y = x_inv.compose(&classes.reps[k]);
                let j = classes.class_of[g.element_index(&y).expect("closure")];
                coefficients[i][j][k] += 1;
            }
        }
    }

    // Degrees divide the order and satisfy d^2 <= |G| - (r - 1).
    let degrees: Vec<u64> = (1..=arith::isqrt((order - (r - 1)) as u64))
        .filter(|d| order as u64 % d == 0)
        .collect();

    let inverse_class: Vec<usize> = (0..r)
        .map(|k| classes.class_of[g.element_index(&classes.reps[k].inverse()).expect("closure")])
        .collect();

    let mut memo: BTreeMap<(u64, u64), Vec<Cyc>> = BTreeMap::new();
    let identity_basis: Vec<Vec<Cyc>> = (0..r)
        .map(|i| {
            let mut v = vec![Cyc::zero(e); r];
            v[i] = Cyc::one(e);
            v
        })
        .collect();
    let mut subspaces = vec![identity_basis];
    for i in 1..r {
        if subspaces.iter().all(|w| w.len() == 1) {
            break;
        }
        let matrix: Vec<Vec<u64>> = (0..r)
            .map(|j| (0..r).map(|k| coefficients[i][j][k]).collect())
            .collect();
        let candidates = eigenvalue_candidates(
            e,
            classes.sizes[i],
            classes.reps[i].order(),
            &degrees,
            &mut memo,
        );
        let mut next = Vec::new();
        for w in subspaces {
            if w.len() == 1 {
                next.push(w);
                continue;
            }
            let restricted = restrict(&matrix, &w, e);
            let charpoly = characteristic_polynomial(&restricted, e);
            let m = w.len();
            let mut found = 0usize;
            for lambda in &candidates {
                if found == m {
                    break;
                }
                if !poly_eval(&charpoly, lambda, e).is_zero() {
                    continue;
                }
                let shifted: CycMatrix = (0..m)
                    .map(|a| {
                        (0..m)
                            .map(|b| {
                                if a == b {
                                    restricted[a][b].sub(lambda)
                                } else {
                                    restricted[a][b].clone()
                                }
                            })
                            .collect()
                    })
                    .collect();
                let kernel = null_space(&shifted, e);
                if kernel.is_empty() {
                    continue;
                }
                found += kernel.len();
                let lifted: Vec<Vec<Cyc>> = kernel
                    .iter()
                    .map(|coeffs| {
                        let mut v = vec![Cyc::zero(e); r];
                        for (t, c) in coeffs.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (slot, wt) in w[t].iter().enumerate() {
                                v[slot] = v[slot].add(&c.mul(wt));
                            }
                        }
                        v
                    })
                    .collect();
                next.push(lifted);
            }
            assert_eq!(found, m, "class matrix {i} failed to split a subspace fully");
        }
        subspaces = next;
    }
    assert!(
        subspaces.len() == r && subspaces.iter().all(|w| w.len() == 1),
        "class algebra did not split into {r} lines"
    );

    let mut rows: Vec<(u64, Vec<Cyc>)> = Vec::with_capacity(r);
    for w in &subspaces {
        let v = &w[0];
        let norm = cyc_inv(&v[0]).expect("identity coordinate of a central character is nonzero");
        let omega: Vec<Cyc> = v.iter().map(|x| x.mul(&norm)).collect();
        // sum over classes of omega_k * omega_{k⁻¹} / |C_k| equals |G| / d^2.
        let mut s = Cyc::zero(e);
        for k in 0..r {
            let term = omega[k]
                .mul(&omega[inverse_class[k]])
                .scale(&BigRational::new(BigInt::one(), BigInt::from(classes.sizes[k])));
            s = s.add(&term);
        }
        let s_rat = s.as_rational().expect("norm sum of a central character is rational");
        let d_squared = BigRational::from_integer(BigInt::from(order)) / s_rat;
        let d_int = d_squared.to_integer();
        assert!(
            d_squared.is_integer(),
            "degree recovery produced a non-integer square"
        );
        let degree = arith::isqrt(u64::try_from(d_int.clone()).expect("small"));
        assert_eq!(BigInt::from(degree) * BigInt::from(degree), d_int);
        let row: Vec<Cyc> = (0..r)
            .map(|k| {
                omega[k].scale(&BigRational::new(
                    BigInt::from(degree),
                    BigInt::from(classes.sizes[k]),
                ))
            })
            .collect();
        rows.push((degree, row));
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
    let degrees: Vec<u64> = rows.iter().map(|(d, _)| *d).collect();
    let values: Vec<Vec<Cyc>> = rows.into_iter().map(|(_, row)| row).collect();
    assert_eq!(degrees.iter().map(|d| d * d).sum::<u64>(), order as u64);
    CharTable {
        classes,
        exponent: e,
        values,
        degrees,
    }
}

/// Equality of two tables up to nothing at all: both construction paths sort
/// rows by (degree, canonical value sequence), so agreement must be exact.
pub fn tables_equal(a: &CharTable, b: &CharTable) -> bool {
    a.degrees == b.degrees
        && a.values.len() == b.values.len()
        && a.values
            .iter()
            .zip(&b.values)
            .all(|(ra, rb)| ra.iter().zip(rb).all(|(x, y)| x == y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::perm::Perm;

    fn group(gens: &[&str], degree: usize) -> Arc<Group> {
        let parsed: Vec<Perm> = gens.iter().map(|s| Perm::parse(s, degree).unwrap()).collect();
        Group::generate(&parsed, degree, 20000).unwrap()
    }

    #[test]
    fn cyc_inverse() {
        let a = Cyc::root_of_unity(5, 1).unwrap().add(&Cyc::from_integer(5, 2));
        let inv = cyc_inv(&a).unwrap();
        assert!(a.mul(&inv).is_one());
        assert!(cyc_inv(&Cyc::zero(4)).is_none());
    }

    #[test]
    fn oracle_matches_dixon_on_sym3() {
        let s3 = group(&["(1,2)", "(1,2,3)"], 3);
        let oracle = class_algebra_character_table(&s3);
        oracle.verify_orthogonality().unwrap();
        let dixon = character_table(&s3).unwrap();
        assert!(tables_equal(&oracle, &dixon));
    }

    #[test]
    fn oracle_matches_dixon_on_quaternion() {
        let q8 = group(&["(1,3,2,4)(5,8,6,7)", "(1,5,2,6)(3,7,4,8)"], 8);
        let oracle = class_algebra_character_table(&q8);
        oracle.verify_orthogonality().unwrap();
        let dixon = character_table(&q8).unwrap();
        assert!(tables_equal(&oracle, &dixon));
    }

    #[test]
    fn oracle_matches_dixon_on_frobenius20() {
        let f20 = group(&["(1,2,3,4,5)", "(2,3,5,4)"], 5);
        let oracle = class_algebra_character_table(&f20);
        oracle.verify_orthogonality().unwrap();
        let dixon = character_table(&f20).unwrap();
        assert!(tables_equal(&oracle, &dixon));
    }
}
