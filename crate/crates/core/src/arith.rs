//! Small integer helpers: factorisation, p-parts, primality at desk scale.

use std::collections::BTreeMap;

/// Prime factorisation by trial division. Adequate for group orders and
/// conductors handled by this crate.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut p = 2u64;
    while p * p <= n {
        while n % p == 0 {
            *out.entry(p).or_insert(0) += 1;
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// The set of primes dividing `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_keys().collect()
}

pub fn is_prime(n: u64) -> bool {
    n > 1 && factorize(n).len() == 1 && factorize(n).values().sum::<u32>() == 1
}

/// True when exactly one prime divides `n` (so `n = p^k` with `k >= 1`).
pub fn is_prime_power(n: u64) -> bool {
    n > 1 && factorize(n).len() == 1
}

/// True when `n` is a power of `p`, including `n = 1`.
pub fn is_p_number(n: u64, p: u64) -> bool {
    let mut n = n;
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// True when no prime of `n` has multiplicity above one.
pub fn is_square_free(n: u64) -> bool {
    factorize(n).values().all(|&k| k == 1)
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut part = 1;
    let mut n = n;
    while n % p == 0 {
        part *= p;
        n /= p;
    }
    part
}

/// Product of the `p`-parts of `n` over `p` in `sigma`.
pub fn sigma_part(n: u64, sigma: &[u64]) -> u64 {
    sigma.iter().map(|&p| p_part(n, p)).product()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num::integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num::integer::lcm(a, b)
}

/// Euler totient.
pub fn phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, k)| p.pow(k - 1) * (p - 1))
        .product::<u64>()
        .max(1)
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_basics() {
        assert_eq!(factorize(60), BTreeMap::from([(2, 2), (3, 1), (5, 1)]));
        assert_eq!(factorize(1), BTreeMap::new());
        assert!(is_prime(61));
        assert!(!is_prime(1));
    }

    #[test]
    fn p_number_includes_one() {
        assert!(is_p_number(1, 5));
        assert!(is_p_number(8, 2));
        assert!(!is_p_number(12, 2));
        assert!(is_prime_power(8));
        assert!(!is_prime_power(1));
        assert!(!is_prime_power(12));
    }

    #[test]
    fn parts_and_phi() {
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(sigma_part(60, &[2, 5]), 20);
        assert_eq!(phi(12), 4);
        assert_eq!(phi(1), 1);
        assert_eq!(isqrt(120), 10);
        assert!(is_square_free(30));
        assert!(!is_square_free(8));
    }
}
