//! Irreducibility of `X^n - a` and the Bezout normalization used by the
//! radical setup.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::is_prime;
use crate::error::{Error, Result};

fn is_perfect_power(x: &BigInt, k: u32) -> bool {
    if x.is_negative() {
        return k % 2 == 1 && is_perfect_power(&-x, k);
    }
    let r = x.nth_root(k);
    r.pow(k) == *x
}

/// Distinct primes of `n`, by trial division.
pub(crate) fn prime_divisors_usize(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The reason `X^n - a` is reducible over Q, or `None` if it is irreducible.
pub fn irreducibility_obstruction(n: usize, a: &BigInt) -> Option<String> {
    if n < 2 {
        return Some(format!("degree {} < 2", n));
    }
    if a.is_zero() {
        return Some("a = 0".into());
    }
    if *a == BigInt::from(1) {
        return Some("a = 1".into());
    }
    for p in prime_divisors_usize(n) {
        if is_perfect_power(a, p as u32) {
            return Some(format!("a is a p-th power (p={})", p));
        }
    }
    if n % 4 == 0 && a.is_negative() {
        let m = -a;
        let (q, r) = m.div_rem(&BigInt::from(4));
        if r.is_zero() && is_perfect_power(&q, 4) {
            return Some(format!("a = -4t^4 (t={}) with 4 | n", q.nth_root(4)));
        }
    }
    None
}

/// Whether `X^n - a` is irreducible over Q.
pub fn is_irreducible_pure(n: usize, a: &BigInt) -> bool {
    irreducibility_obstruction(n, a).is_none()
}

/// The unique `u` in `[1, p^m - 1]` and `v >= 0` with `1 = e**·u - p^m·v`.
pub fn lemma21_gcd(e_star_star: u64, p: u64, f_minus_estar: u32) -> Result<(u64, u64)> {
    if f_minus_estar < 1 {
        return Err(Error::Precondition("f - e* must be at least 1".into()));
    }
    if !is_prime(&BigInt::from(p)) {
        return Err(Error::NotPrime(BigInt::from(p)));
    }
    if e_star_star % p == 0 {
        return Err(Error::Precondition(format!(
            "gcd({}, {}) != 1",
            e_star_star, p
        )));
    }
    let m = p
        .checked_pow(f_minus_estar)
        .ok_or_else(|| Error::Unsupported("p^(f-e*) overflows u64".into()))?;
    let g = (e_star_star as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(g.gcd, 1);
    let u = g.x.rem_euclid(m as i128) as u128;
    let v = (e_star_star as u128 * u - 1) / m as u128;
    Ok((u as u64, v as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible_pure(2, &BigInt::from(2)));
        assert!(!is_irreducible_pure(4, &BigInt::from(-4)));
        assert!(!is_irreducible_pure(4, &BigInt::from(9)));
        assert!(!is_irreducible_pure(3, &BigInt::from(-8)));
        assert!(is_irreducible_pure(2, &BigInt::from(-1)));
        assert!(is_irreducible_pure(4, &BigInt::from(-1)));
        assert!(!is_irreducible_pure(8, &BigInt::from(-64)));
        assert!(is_irreducible_pure(2, &BigInt::from(-4)));
        assert_eq!(
            irreducibility_obstruction(4, &BigInt::from(9)).unwrap(),
            "a is a p-th power (p=2)"
        );
    }

    #[test]
    fn bezout_pair_examples() {
        assert_eq!(lemma21_gcd(1, 2, 1).unwrap(), (1, 0));
        assert_eq!(lemma21_gcd(3, 2, 2).unwrap(), (3, 2));
        assert_eq!(lemma21_gcd(1, 3, 1).unwrap(), (1, 0));
        assert!(lemma21_gcd(2, 2, 1).is_err());
        assert!(lemma21_gcd(1, 4, 1).is_err());
    }
}
