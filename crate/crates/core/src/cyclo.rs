//! Exact arithmetic in cyclotomic fields `Q(zeta_e)`.
//!
//! Values are held in the power basis `{zeta_e^i : 0 <= i < phi(e)}` after
//! reduction modulo the e-th cyclotomic polynomial, with arbitrary-precision
//! rational coordinates. Canonical form makes the zero test a plain
//! coefficient scan, which is what makes "vanishing" a decidable, exact
//! predicate. Arithmetic between mismatched conductors lifts both operands
//! to the lcm conductor.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

/// Arbitrary-precision rational; always reduced, denominator positive.
pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Coefficients of the cyclotomic polynomial `Phi_e`, computed by dividing
/// `x^e - 1` by the cyclotomic polynomials of the proper divisors of `e`.
/// Monic, integer coefficients, degree `phi(e)`. Memoised globally.
fn cyclotomic_polynomial(e: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&e) {
        return hit.clone();
    }
    // x^e - 1
    let mut poly = vec![BigInt::zero(); e as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[e as usize] = BigInt::one();
    for d in 1..e {
        if e % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            poly = int_poly_div_exact(&poly, &phi_d);
        }
    }
    cache.lock().unwrap().insert(e, poly.clone());
    poly
}

/// Exact division of integer polynomials (the divisor is monic).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let coeff = rem[k + dd].clone();
        if coeff.is_zero() {
            continue;
        }
        quot[k] = coeff.clone();
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &coeff * dj;
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// An exact element of `Q(zeta_e)`.
#[derive(Clone)]
pub struct Cyc {
    conductor: u64,
    /// Power-basis coordinates; length is exactly `phi(conductor)`.
    coeffs: Vec<Rational>,
}

impl Cyc {
    pub fn zero(conductor: u64) -> Cyc {
        Cyc {
            conductor,
            coeffs: vec![Rational::zero(); arith::phi(conductor) as usize],
        }
    }

    pub fn one(conductor: u64) -> Cyc {
        Cyc::from_rational(conductor, Rational::one())
    }

    pub fn from_rational(conductor: u64, value: Rational) -> Cyc {
        let mut out = Cyc::zero(conductor);
        out.coeffs[0] = value;
        out
    }

    pub fn from_integer(conductor: u64, value: i64) -> Cyc {
        Cyc::from_rational(conductor, rat_int(value))
    }

    /// Sum of integer multiples of roots of unity: `sum c * zeta_e^k` over
    /// the given `(k, c)` pairs.
    pub fn from_monomials(e: u64, terms: &[(u64, i64)]) -> Cyc {
        let mut poly = vec![Rational::zero(); e as usize];
        for &(k, c) in terms {
            poly[(k % e) as usize] += rat_int(c);
        }
        Cyc::reduce(e, poly)
    }

    /// `zeta_e^k` in canonical form. `k` may be any integer (taken mod `e`).
    pub fn root_of_unity(e: u64, k: i64) -> Result<Cyc> {
        if e == 0 {
            return Err(Error::Internal("conductor must be positive".into()));
        }
        let k = k.rem_euclid(e as i64) as usize;
        let mut poly = vec![Rational::zero(); k + 1];
        poly[k] = Rational::one();
        Ok(Cyc::reduce(e, poly))
    }

    /// Reduces an arbitrary-degree polynomial in `zeta_e` modulo `Phi_e`.
    fn reduce(conductor: u64, mut poly: Vec<Rational>) -> Cyc {
        let phi = arith::phi(conductor) as usize;
        if poly.len() > phi {
            let modulus = cyclotomic_polynomial(conductor);
            let dd = modulus.len() - 1;
            for k in (dd..poly.len()).rev() {
                if poly[k].is_zero() {
                    continue;
                }
                let coeff = poly[k].clone();
                for (j, mj) in modulus.iter().enumerate() {
                    let term = &coeff * BigRational::from_integer(mj.clone());
                    poly[k - dd + j] -= term;
                }
            }
        }
        poly.resize(phi, Rational::zero());
        Cyc {
            conductor,
            coeffs: poly,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Rewrites the value at a conductor that is a multiple of the current
    /// one; the value itself is unchanged.
    pub fn lift_to(&self, conductor: u64) -> Cyc {
        assert!(
            conductor % self.conductor == 0,
            "lift target must be a multiple of the conductor"
        );
        if conductor == self.conductor {
            return self.clone();
        }
        let step = (conductor / self.conductor) as usize;
        let mut poly = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Cyc::reduce(conductor, poly)
    }

    fn matched(&self, other: &Cyc) -> (Cyc, Cyc) {
        let e = arith::lcm(self.conductor, other.conductor);
        (self.lift_to(e), other.lift_to(e))
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        let (mut a, b) = self.matched(other);
        for (ac, bc) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *ac += bc;
        }
        a
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        let (a, b) = self.matched(other);
        let mut poly = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ac) in a.coeffs.iter().enumerate() {
            if ac.is_zero() {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                if bc.is_zero() {
                    continue;
                }
                poly[i + j] += ac * bc;
            }
        }
        Cyc::reduce(a.conductor, poly)
    }

    pub fn scale(&self, factor: &Rational) -> Cyc {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Galois twist `zeta -> zeta^k` for `gcd(k, e) = 1`.
    pub fn galois(&self, k: u64) -> Result<Cyc> {
        if arith::gcd(k % self.conductor, self.conductor) != 1 && self.conductor > 1 {
            return Err(Error::Internal(format!(
                "galois exponent {k} not coprime to conductor {}",
                self.conductor
            )));
        }
        let e = self.conductor;
        let mut poly = vec![Rational::zero(); e as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let target = (i as u64 * k % e) as usize;
                poly[target] += c;
            }
        }
        Ok(Cyc::reduce(e, poly))
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Cyc {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(self.conductor - 1).expect("e-1 coprime to e")
    }

    /// Exact zero test from the canonical coefficient vector.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `Some(value)` when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// `Some(n)` when the element is a rational integer.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        let value = self.as_rational()?;
        if value.denom().is_one() {
            Some(value.numer().clone())
        } else {
            None
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational_integer().map_or(false, |n| n.is_one())
    }

    /// Deterministic ordering on canonical forms (lift to common conductor,
    /// then compare coefficient vectors lexicographically).
    pub fn canonical_cmp(&self, other: &Cyc) -> std::cmp::Ordering {
        let (a, b) = self.matched(other);
        a.coeffs.cmp(&b.coeffs)
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.matched(other);
        a.coeffs == b.coeffs
    }
}
impl Eq for Cyc {}

impl fmt::Display for Cyc {
    /// Renders as `a0 + a1*z(e)^1 + ...` with zero terms suppressed.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*z({})^{i}", self.conductor)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialisation carries the conductor and the coordinates as exact
/// `"num"` or `"num/den"` strings.
impl Serialize for Cyc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            conductor: u64,
            coeffs: Vec<&'a str>,
        }
        let rendered: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let wire = Wire {
            conductor: self.conductor,
            coeffs: rendered.iter().map(|s| s.as_str()).collect(),
        };
        wire.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            conductor: u64,
            coeffs: Vec<String>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let expected = arith::phi(wire.conductor) as usize;
        if wire.coeffs.len() != expected {
            return Err(serde::de::Error::custom(format!(
                "expected {expected} coefficients for conductor {}",
                wire.conductor
            )));
        }
        let mut coeffs = Vec::with_capacity(expected);
        for s in wire.coeffs {
            let c: Rational = s
                .parse()
                .map_err(|e| serde::de::Error::custom(format!("bad rational {s:?}: {e}")))?;
            coeffs.push(c);
        }
        Ok(Cyc {
            conductor: wire.conductor,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(e: u64, k: i64) -> Cyc {
        Cyc::root_of_unity(e, k).unwrap()
    }

    #[test]
    fn defining_relations() {
        // zeta_4 squares to -1.
        let i = zeta(4, 1);
        assert_eq!(i.mul(&i), Cyc::from_integer(4, -1));
        assert_eq!(zeta(1, 0), Cyc::one(1));
        // 1 + z3 + z3^2 = 0.
        let s = Cyc::one(3).add(&zeta(3, 1)).add(&zeta(3, 2));
        assert!(s.is_zero());
    }

    #[test]
    fn arithmetic_basics() {
        let a = zeta(8, 1).add(&Cyc::from_integer(8, 1));
        assert!(a.sub(&a).is_zero());
        assert_eq!(zeta(5, 1).mul(&zeta(5, 4)), Cyc::one(5));
        assert_eq!(zeta(8, 1).conj(), zeta(8, 7));
        // a * conj(a) is real for a = 1 + zeta_8: equal to its own conjugate.
        let norm = a.mul(&a.conj());
        assert_eq!(norm.conj(), norm);
    }

    #[test]
    fn zero_and_integer_detection() {
        assert!(zeta(4, 2).add(&Cyc::one(4)).is_zero());
        let m = zeta(3, 1).add(&zeta(3, 2));
        assert_eq!(m.as_rational_integer(), Some(BigInt::from(-1)));
        let golden = zeta(5, 1).add(&zeta(5, 4));
        assert!(golden.as_rational_integer().is_none());
        assert!(golden.as_rational().is_none());
    }

    #[test]
    fn conductor_lifting_preserves_values() {
        let minus_one = Cyc::from_integer(2, -1);
        let lifted = minus_one.lift_to(6);
        assert_eq!(lifted, minus_one);
        assert_eq!(lifted.as_rational_integer(), Some(BigInt::from(-1)));
        // zeta_2 = zeta_6^3.
        assert_eq!(zeta(2, 1).lift_to(6), zeta(6, 3));
    }

    #[test]
    fn galois_sums_give_moebius() {
        // sum over gcd(k,e)=1 of zeta_e^k equals mu(e).
        let mu = |e: u64| -> i64 {
            let f = crate::arith::factorize(e);
            if f.values().any(|&k| k > 1) {
                0
            } else if f.len() % 2 == 0 {
                1
            } else {
                -1
            }
        };
        for e in 1..=24u64 {
            let mut sum = Cyc::zero(e);
            for k in 0..e.max(1) {
                if crate::arith::gcd(k, e) == 1 || e == 1 {
                    sum = sum.add(&zeta(e, k as i64));
                    if e == 1 {
                        break;
                    }
                }
            }
            assert_eq!(
                sum.as_rational_integer(),
                Some(BigInt::from(mu(e))),
                "conductor {e}"
            );
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(Cyc::zero(4).to_string(), "0");
        assert_eq!(Cyc::from_integer(4, 2).to_string(), "2");
        let v = Cyc::from_integer(4, 1).add(&zeta(4, 1).scale(&rat_int(-1)));
        assert_eq!(v.to_string(), "1 + -1*z(4)^1");
    }

    #[test]
    fn serde_roundtrip() {
        let v = zeta(12, 5).add(&Cyc::from_rational(12, BigRational::new(3.into(), 2.into())));
        let json = serde_json::to_string(&v).unwrap();
        let back: Cyc = serde_json::from_str(&json).unwrap();
        assert_eq!(v, back);
    }
}
