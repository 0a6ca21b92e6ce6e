//! Prime factorizations with sign and expanded value.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer together with its prime factorization.
///
/// `value == sign * prod(q^e)`; zero has sign 0 and no factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredInt {
    sign: i8,
    factors: BTreeMap<BigInt, u32>,
    value: BigInt,
}

impl FactoredInt {
    /// Builds from a sign and a prime-exponent map. Zero exponents are dropped.
    /// The caller is responsible for the keys being prime.
    pub fn new(sign: i8, factors: BTreeMap<BigInt, u32>) -> Self {
        let factors: BTreeMap<BigInt, u32> = factors.into_iter().filter(|(_, e)| *e > 0).collect();
        let sign = sign.signum();
        let value = if sign == 0 {
            BigInt::zero()
        } else {
            let mut v = BigInt::from(sign);
            for (q, e) in &factors {
                v *= q.pow(*e);
            }
            v
        };
        let factors = if sign == 0 { BTreeMap::new() } else { factors };
        FactoredInt {
            sign,
            factors,
            value,
        }
    }

    pub fn zero() -> Self {
        FactoredInt::new(0, BTreeMap::new())
    }

    pub fn one() -> Self {
        FactoredInt::new(1, BTreeMap::new())
    }

    /// `sign * q^e` for a prime `q`.
    pub fn prime_power(sign: i8, q: impl Into<BigInt>, e: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert(q.into(), e);
        FactoredInt::new(sign, m)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &BTreeMap<BigInt, u32> {
        &self.factors
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Exponent of `q` (0 if absent).
    pub fn exponent(&self, q: &BigInt) -> u32 {
        self.factors.get(q).copied().unwrap_or(0)
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.keys()
    }

    /// Recomputes the value from sign and factors and compares.
    pub fn is_consistent(&self) -> bool {
        FactoredInt::new(self.sign, self.factors.clone()).value == self.value
            && self.factors.values().all(|e| *e >= 1)
    }

    pub fn abs(&self) -> Self {
        FactoredInt::new(self.sign.abs(), self.factors.clone())
    }

    pub fn with_sign(&self, sign: i8) -> Self {
        FactoredInt::new(sign, self.factors.clone())
    }

    pub fn mul(&self, other: &FactoredInt) -> Self {
        let mut f = self.factors.clone();
        for (q, e) in &other.factors {
            *f.entry(q.clone()).or_insert(0) += e;
        }
        FactoredInt::new(self.sign * other.sign, f)
    }

    pub fn pow(&self, k: u32) -> Self {
        let f = self
            .factors
            .iter()
            .map(|(q, e)| (q.clone(), e * k))
            .collect();
        let sign = if k == 0 {
            1
        } else if k % 2 == 0 {
            self.sign.abs()
        } else {
            self.sign
        };
        FactoredInt::new(sign, f)
    }

    /// Exact quotient; fails unless `other` divides `self`.
    pub fn checked_div(&self, other: &FactoredInt) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::Precondition("division by zero".into()));
        }
        let mut f = self.factors.clone();
        for (q, e) in &other.factors {
            let have = f.get(q).copied().unwrap_or(0);
            if have < *e {
                return Err(Error::Internal(format!(
                    "{} does not divide {}",
                    other, self
                )));
            }
            f.insert(q.clone(), have - e);
        }
        Ok(FactoredInt::new(self.sign * other.sign, f))
    }

    /// Positive gcd computed on exponents.
    pub fn gcd(&self, other: &FactoredInt) -> Self {
        if self.is_zero() {
            return other.abs();
        }
        if other.is_zero() {
            return self.abs();
        }
        let f = self
            .factors
            .iter()
            .filter_map(|(q, e)| other.factors.get(q).map(|e2| (q.clone(), (*e).min(*e2))))
            .collect();
        FactoredInt::new(1, f)
    }

    /// Parses the cofactor of `x` over the supplied primes; `None` if some other
    /// prime divides `x`.
    pub fn over_primes(x: &BigInt, primes: &[BigInt]) -> Option<Self> {
        if x.is_zero() {
            return Some(FactoredInt::zero());
        }
        let sign: i8 = if x.is_negative() { -1 } else { 1 };
        let mut rest = x.abs();
        let mut f = BTreeMap::new();
        for q in primes {
            let mut e = 0;
            while (&rest % q).is_zero() {
                rest /= q;
                e += 1;
            }
            if e > 0 {
                *f.entry(q.clone()).or_insert(0) += e;
            }
        }
        if rest.is_one() {
            Some(FactoredInt::new(sign, f))
        } else {
            None
        }
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        if self.factors.is_empty() {
            return write!(f, "{}", self.sign);
        }
        if self.sign < 0 {
            write!(f, "-")?;
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(q, e)| {
                if *e == 1 {
                    q.to_string()
                } else {
                    format!("{}^{}", q, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}
