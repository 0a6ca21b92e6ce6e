//! Primality testing, valuations and budgeted factorization.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::FactoredInt;
use crate::error::{Error, Result};

const TRIAL_BOUND: u32 = 1_000_000;
const DEFAULT_RHO_ITERATIONS: u64 = 1 << 22;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_BOUND as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (0..=n).filter(|&k| sieve[k]).map(|k| k as u32).collect()
    })
}

fn miller_rabin(n: &BigInt, base: u32) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let b = BigInt::from(base) % n;
    if b.is_zero() {
        return true;
    }
    let mut x = b.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut t = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = &n % &eight;
            if r == three || r == five {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % &four) == three && (&n % &four) == three {
            t = -t;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x = if x.is_odd() { x + n } else { x };
    let h: BigInt = x >> 1;
    h.mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigInt) -> bool {
    let sq = n.sqrt();
    if &sq * &sq == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        let j = jacobi(&d, n);
        if j == -1 {
            break;
        }
        if j == 0 && d.abs() != *n {
            return false;
        }
        d = if d.is_positive() {
            -(d + 2u32)
        } else {
            -(d - 2u32)
        };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4u32;
    let q = q.mod_floor(n);
    let np1: BigInt = n + 1;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = k.bits();
    for i in (0..bits).rev() {
        u = (&u * &v).mod_floor(n);
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if k.bit(i) {
            let nu = half_mod(&p * &u + &v, n);
            let nv = half_mod(&d * &u + &p * &v, n);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(n);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(n);
        qk = (&qk * &qk).mod_floor(n);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Baillie-PSW primality test preceded by trial division and extra
/// Miller-Rabin rounds.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in small_primes().iter().take(200) {
        let pb = BigInt::from(p);
        if *n == pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    for base in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if !miller_rabin(n, base) {
            return false;
        }
    }
    strong_lucas(n)
}

/// p-adic valuation with primality check on `q`.
pub fn vp(q: &BigInt, x: &BigInt) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ValuationUndefined);
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q.clone()));
    }
    Ok(val(q, x))
}

/// p-adic valuation without checks; `x` must be nonzero and `q > 1`.
pub(crate) fn val(q: &BigInt, x: &BigInt) -> u32 {
    debug_assert!(!x.is_zero());
    let mut e = 0;
    let mut r = x.clone();
    loop {
        let (quo, rem) = r.div_rem(q);
        if !rem.is_zero() {
            return e;
        }
        r = quo;
        e += 1;
    }
}

/// Cached valuations at a fixed prime.
#[derive(Clone, Debug)]
pub struct ValuationTable {
    q: BigInt,
    entries: HashMap<BigInt, u32>,
}

impl ValuationTable {
    pub fn new(q: BigInt) -> Result<Self> {
        if !is_prime(&q) {
            return Err(Error::NotPrime(q));
        }
        Ok(ValuationTable {
            q,
            entries: HashMap::new(),
        })
    }

    pub fn prime(&self) -> &BigInt {
        &self.q
    }

    pub fn get(&mut self, x: &BigInt) -> Result<u32> {
        if x.is_zero() {
            return Err(Error::ValuationUndefined);
        }
        if let Some(v) = self.entries.get(x) {
            return Ok(*v);
        }
        let v = val(&self.q, x);
        self.entries.insert(x.clone(), v);
        Ok(v)
    }

    pub fn entries(&self) -> &HashMap<BigInt, u32> {
        &self.entries
    }
}

/// `w_p(a) = v_p(a^(p-1) - 1)`.
pub fn wieferich(p: &BigInt, a: &BigInt) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    if (a % p).is_zero() {
        return Err(Error::Precondition(format!("{} divides {}", p, a)));
    }
    let e = (p - 1u32)
        .to_u32()
        .ok_or_else(|| Error::Unsupported("prime too large".into()))?;
    let x = a.pow(e) - 1u32;
    Ok(val(p, &x))
}

/// Factorization budget.
#[derive(Clone, Copy, Debug)]
pub struct FactorBudget {
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            rho_iterations: DEFAULT_RHO_ITERATIONS,
        }
    }
}

/// Pollard rho, Brent variant. Returns a nontrivial factor or `None`.
fn rho(n: &BigInt, c: u64, budget: &mut u64) -> Option<BigInt> {
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2);
    let mut r: u64 = 1;
    let m: u64 = 128;
    let mut q = BigInt::one();
    let mut g = BigInt::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = m.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (&q * (&x - &y).abs()) % n;
            }
            g = q.gcd(n);
            k += steps;
            if *budget <= steps {
                return None;
            }
            *budget -= steps;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            g = (&x - &ys).abs().gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

fn split_rec(
    n: BigInt,
    budget: &mut u64,
    out: &mut BTreeMap<BigInt, u32>,
    stuck: &mut Vec<BigInt>,
) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    // Rho cannot separate q^k; peel perfect powers first.
    for k in (2..=n.bits() as u32).rev() {
        let r = n.nth_root(k);
        if r > BigInt::one() && r.pow(k) == n {
            let mut sub = BTreeMap::new();
            split_rec(r, budget, &mut sub, stuck);
            for (q, e) in sub {
                *out.entry(q).or_insert(0) += e * k;
            }
            return;
        }
    }
    for c in 1..=16u64 {
        if *budget == 0 {
            break;
        }
        if let Some(d) = rho(&n, c, budget) {
            let other = &n / &d;
            split_rec(d, budget, out, stuck);
            split_rec(other, budget, out, stuck);
            return;
        }
    }
    stuck.push(n);
}

/// Certified factorization with the default budget.
pub fn factorize(x: &BigInt, hint: Option<&[(BigInt, u32)]>) -> Result<FactoredInt> {
    factorize_with_budget(x, hint, FactorBudget::default())
}

/// Trial division to 10^6, then Pollard rho with BPSW certification of
/// every factor. A supplied hint is validated exactly and the rest completed.
pub fn factorize_with_budget(
    x: &BigInt,
    hint: Option<&[(BigInt, u32)]>,
    budget: FactorBudget,
) -> Result<FactoredInt> {
    if x.is_zero() {
        return Err(Error::Precondition("cannot factor 0".into()));
    }
    let sign: i8 = if x.is_negative() { -1 } else { 1 };
    let mut rest = x.abs();
    let mut out: BTreeMap<BigInt, u32> = BTreeMap::new();
    if let Some(h) = hint {
        for (q, e) in h {
            if !is_prime(q) {
                return Err(Error::InvalidHint(format!("{} is not prime", q)));
            }
            if out.contains_key(q) {
                return Err(Error::InvalidHint(format!("{} listed twice", q)));
            }
            let actual = val(q, &rest);
            if actual != *e {
                return Err(Error::InvalidHint(format!(
                    "v_{}({}) = {}, hint says {}",
                    q, x, actual, e
                )));
            }
            rest /= q.pow(*e);
            out.insert(q.clone(), *e);
        }
    }
    if let Some(mut r) = rest.to_u64() {
        for &p in small_primes() {
            let p = p as u64;
            if p * p > r {
                break;
            }
            let mut e = 0;
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            if e > 0 {
                *out.entry(BigInt::from(p)).or_insert(0) += e;
            }
        }
        rest = BigInt::from(r);
    } else {
        for &p in small_primes() {
            let pb = BigInt::from(p);
            if &pb * &pb > rest {
                break;
            }
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(&pb);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                *out.entry(pb).or_insert(0) += e;
            }
        }
    }
    let mut iters = budget.rho_iterations;
    let mut stuck = Vec::new();
    split_rec(rest, &mut iters, &mut out, &mut stuck);
    if let Some(c) = stuck.into_iter().next() {
        return Err(Error::IncompleteFactorization {
            partial: FactoredInt::new(sign, out),
            remaining: c,
        });
    }
    Ok(FactoredInt::new(sign, out))
}

/// Factorization with known candidate primes tried first.
pub(crate) fn factorize_over(x: &BigInt, primes: &[BigInt]) -> Result<FactoredInt> {
    match FactoredInt::over_primes(x, primes) {
        Some(f) => Ok(f),
        None => factorize(x, None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn valuations() {
        assert_eq!(vp(&b(2), &b(360)).unwrap(), 3);
        assert_eq!(vp(&b(5), &b(1)).unwrap(), 0);
        assert_eq!(vp(&b(3), &b(45).pow(3)).unwrap(), 6);
        assert!(matches!(vp(&b(2), &b(0)), Err(Error::ValuationUndefined)));
        assert!(matches!(vp(&b(4), &b(8)), Err(Error::NotPrime(_))));
    }

    #[test]
    fn wieferich_examples() {
        assert_eq!(wieferich(&b(2), &b(17)).unwrap(), 4);
        assert_eq!(wieferich(&b(3), &b(2)).unwrap(), 1);
        assert_eq!(wieferich(&b(2), &b(5)).unwrap(), 2);
        assert!(wieferich(&b(3), &b(6)).is_err());
    }

    #[test]
    fn factor_examples() {
        let f = factorize(&b(360), None).unwrap();
        assert_eq!(f.to_string(), "2^3*3^2*5");
        let f = factorize(&b(-1), None).unwrap();
        assert_eq!(f.sign(), -1);
        assert!(f.factors().is_empty());
        assert_eq!(factorize(&b(192), None).unwrap().to_string(), "2^6*3");
        assert!(factorize(&b(0), None).is_err());
    }

    #[test]
    fn factor_large_semiprime() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let x = &p * &q * &p;
        let f = factorize(&x, None).unwrap();
        assert_eq!(f.exponent(&p), 2);
        assert_eq!(f.exponent(&q), 1);
        assert_eq!(f.value(), &x);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let p: BigInt = "170141183460469231731687303715884105727".parse().unwrap();
        let q: BigInt = "162259276829213363391578010288127".parse().unwrap();
        let x = &p * &q * 12;
        match factorize_with_budget(
            &x,
            None,
            FactorBudget {
                rho_iterations: 1000,
            },
        ) {
            Err(Error::IncompleteFactorization { partial, remaining }) => {
                assert_eq!(partial.value(), &BigInt::from(12));
                assert_eq!(remaining, &p * &q);
            }
            other => panic!("unexpected {:?}", other),
        }
        let hint = vec![(p.clone(), 1), (q.clone(), 1)];
        let f = factorize_with_budget(
            &x,
            Some(&hint),
            FactorBudget {
                rho_iterations: 1000,
            },
        )
        .unwrap();
        assert_eq!(f.value(), &x);
    }

    #[test]
    fn hints_are_validated() {
        assert!(matches!(
            factorize(&b(360), Some(&[(b(2), 2)])),
            Err(Error::InvalidHint(_))
        ));
        assert!(matches!(
            factorize(&b(360), Some(&[(b(4), 1)])),
            Err(Error::InvalidHint(_))
        ));
        assert_eq!(
            factorize(&b(360), Some(&[(b(3), 2)])).unwrap().to_string(),
            "2^3*3^2*5"
        );
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (2..2000u64)
            .filter(|&k| is_prime(&BigInt::from(k)))
            .collect();
        let brute: Vec<u64> = (2..2000u64)
            .filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0))
            .collect();
        assert_eq!(primes, brute);
        // Carmichael numbers and a strong pseudoprime to several bases.
        for c in [561u64, 41041, 3215031751, 3825123056546413051] {
            assert!(!is_prime(&BigInt::from(c)));
        }
        assert!(is_prime(
            &"170141183460469231731687303715884105727".parse().unwrap()
        ));
    }
}
